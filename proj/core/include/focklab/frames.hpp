#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "focklab/genfun.hpp"
#include "focklab/kernel.hpp"

namespace focklab {

struct GramSection {
    PointSeq seq;
    Eigen::MatrixXcd matrix;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double cond = 0.0;
};

inline constexpr std::size_t kMaxSection = 512;

// Normalized kernels over indices [i_lo, i_hi).
GramSection gram_section(const KernelTable& tab, const PointSeq& seq, std::size_t i_lo, std::size_t i_hi);

struct TrendRow {
    int size = 0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double cond = 0.0;
};

std::vector<TrendRow> riesz_trend(const KernelTable& tab, const PointSeq& seq, const std::vector<int>& sizes);

// Lagrange-type basis F(z)/(F'(lambda_n)(z - lambda_n)) of a node set.
class LagrangeBasis {
public:
    LagrangeBasis(PointSeq nodes, double alpha);

    const GenFun& genfun() const { return f_; }
    const PointSeq& nodes() const { return f_.zeros(); }
    const std::vector<LogComplex>& derivatives() const { return deriv_; }

    LogComplex basis(std::size_t n, const LogPoint& z) const;
    LogComplex basis(std::size_t n, const LogPoint& z, const EvalResult& fz) const;
    LogComplex interpolate(const std::vector<LogComplex>& values, const LogPoint& z) const;

private:
    GenFun f_;
    std::vector<LogComplex> deriv_;
};

struct BiorthMatrix {
    PointSeq lattice;
    PointSeq target;
    std::vector<std::vector<LogComplex>> entries;  // entries[n][m]
    bool unbounded = false;
    double opnorm2 = 0.0;
    Eigen::MatrixXcd materialized() const;
};

inline constexpr std::size_t kBiorthCut = 8;

// A[n][m] = F(gamma_m)/(F'(lambda_n)(gamma_m - lambda_n)) * ||k_{lambda_n}|| / ||k_{gamma_m}||
BiorthMatrix biorth_matrix(const KernelTable& tab, const PointSeq& lattice, const PointSeq& target, std::size_t size,
                           std::size_t boundary_cut = kBiorthCut);

// B[n][m] = e^{phi(lambda_n) - phi(gamma_m)} F(gamma_m)/(F'(lambda_n)(gamma_m - lambda_n))
BiorthMatrix biorth_matrix_finfty(double alpha, const PointSeq& lattice, const PointSeq& target, std::size_t size,
                                  std::size_t boundary_cut = kBiorthCut);

struct DecayFit {
    double C = 0.0;
    double kappa = 0.0;
    std::vector<double> envelope;  // max |A| at each offset |n-m|
};

DecayFit decay_fit(const BiorthMatrix& a);

struct Precondition {
    bool separated = false;
    bool bounded = false;
    double d_min = 0.0;
    double delta_sup = 0.0;
    bool ok() const { return separated && bounded; }
};

Precondition interpolation_precondition(const PointSeq& target, double alpha);

struct Interpolation {
    std::vector<LogComplex> values;
    Precondition precondition;
    double log_sup_weighted = kNegInf;  // max over eval points of log|f_v| - phi
};

Interpolation interpolate_f2(const PointSeq& target, double alpha, const std::vector<LogComplex>& values,
                             const std::vector<LogPoint>& eval_at);

// Target carries one extra point; the precondition is checked with that point dropped.
Interpolation interpolate_finfty(const PointSeq& target, double alpha, const std::vector<LogComplex>& values,
                                 const std::vector<LogPoint>& eval_at, std::size_t extra_index = 0);

struct ControlAudit {
    double constant = 0.0;        // max over the family
    double lagrange_error = 0.0;  // max relative node mismatch
    std::vector<double> ratios;
};

// v_n = b_n ||k_{lambda_n}|| on the first `support` nodes, b complex normal; ratio of the discrete norm of f_v on
// `grid` to the l2 norm of b.
ControlAudit f2_control_audit(const KernelTable& tab, const PointSeq& target, std::size_t support, const PointSeq& grid,
                              int trials, std::uint64_t seed = kDefaultSeed);

// v_n = e^{phi(lambda_n) + i psi_n} on the first `support` nodes; sup of |f_v| e^{-phi} over `grid`.
ControlAudit finfty_control_audit(double alpha, const PointSeq& target, std::size_t support,
                                  const std::vector<LogPoint>& grid, int trials, std::uint64_t seed = kDefaultSeed);

std::vector<LogPoint> log_polar_grid(double t_lo, double t_hi, int n_t, int n_theta);

struct Monomials {
    int m_max = 20;
};
struct Kernels {
    std::vector<LogPoint> w;
};
struct Biorthogonal {
    PointSeq target;
    std::vector<std::size_t> indices;
    PointSeq reference;
};
using TestFamily = std::variant<Monomials, Kernels, Biorthogonal>;

// Band of discrete norm on seq over exact (or reference) norm, one entry per family member.
RatioBand sampling_audit_f2(const KernelTable& tab, const PointSeq& seq, const TestFamily& family);

struct StabilityReport {
    double baseline = 0.0;
    double worst = 0.0;
    std::vector<double> per_trial;
};

PointSeq perturb(const PointSeq& base, double alpha, double d_rho_step, Rng& rng);

StabilityReport perturbation_stability_audit(const KernelTable& tab, const PointSeq& base, double d_rho_step,
                                             int trials, int m_max = 20, std::uint64_t seed = kDefaultSeed);

struct BlowupResult {
    double node_sup = 0.0;
    double value = 0.0;
    std::size_t nodes_used = 0;
    double grid_sup = 0.0;
};

BlowupResult blowup_fn(double alpha, const PointSeq& gamma2, int n, const std::vector<LogPoint>& eval_grid = {});

}  // namespace focklab
