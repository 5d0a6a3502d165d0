#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "focklab/kernel.hpp"
#include "focklab/weights.hpp"

namespace focklab {

// Geometric continuation of the zero set beyond the stored range.
struct TailModel {
    double next_t = 0.0;
    double spacing = 1.0;
    int multiplicity = 1;
};

// Canonical product F(z) = prod (1 - z/lambda_k), F(0) = 1.
class GenFun {
public:
    GenFun(PointSeq zeros, double alpha);
    GenFun(PointSeq zeros, double alpha, std::optional<TailModel> tail);

    const PointSeq& zeros() const { return zeros_; }
    double alpha() const { return alpha_; }
    const std::optional<TailModel>& tail() const { return tail_; }

private:
    PointSeq zeros_;
    double alpha_;
    std::optional<TailModel> tail_;
};

std::optional<TailModel> infer_tail(const PointSeq& zeros);

struct EvalResult {
    LogComplex value;
    double tail_bound = 0.0;
    bool exact_zero = false;
    std::size_t zero_index = 0;
};

EvalResult eval(const GenFun& f, const LogPoint& z);

// F'(lambda_k) = (-1/lambda_k) prod_{j != k} (1 - lambda_k/lambda_j)
LogComplex derivative_at_zero(const GenFun& f, std::size_t k);

// Euclidean distance to the nearest zero, in log form.
double log_dist_to_zeros(const PointSeq& zeros, const LogPoint& z);

// Band of |F(z)|(1+|z|)^p e^{-phi(z)} / dist(z, zeros).
RatioBand envelope_audit(const GenFun& f, double exponent, const std::vector<LogPoint>& sample);

std::vector<LogPoint> envelope_sample(const GenFun& f, std::size_t count, double t_lo, double t_hi,
                                      std::uint64_t seed = kDefaultSeed, double min_d_rho = 0.01);

struct JensenResult {
    double discrepancy = 0.0;
    double tail_bound = 0.0;
    double circle_mean = 0.0;
    double zero_sum = 0.0;
};

JensenResult jensen_audit(const GenFun& f, double t_R, int n_theta = 1024);

}  // namespace focklab
