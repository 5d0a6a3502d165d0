#pragma once

#include <filesystem>
#include <vector>

#include "focklab/points.hpp"

namespace focklab {

// logc[n] = log ||z^n||^2
struct KernelTable {
    double alpha = 0.5;
    std::vector<double> logc;
    int n_max() const { return static_cast<int>(logc.size()) - 1; }
};

inline constexpr int kMomentCacheVersion = 1;

double log_moment(double alpha, int n);
KernelTable moments(double alpha, int n_max);

// Table length adequate for kernel evaluation with |z|, |w| <= e^{t_max}.
int table_size_for(double alpha, double t_max);

// Persistent table keyed by (alpha rounded to 1e-12, n_max). Cache IO failures fall back to computing.
KernelTable moments_cached(double alpha, int n_max, const std::filesystem::path& cache_dir);
std::filesystem::path moment_cache_file(const std::filesystem::path& cache_dir, double alpha, int n_max);

LogComplex kernel_value(const KernelTable& tab, const LogPoint& z, const LogPoint& w);
double log_kernel_diag(const KernelTable& tab, const LogPoint& z);

struct RatioBand {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t argmin = 0;
    std::size_t argmax = 0;
    double spread() const { return hi / lo; }
};

RatioBand band_from_logs(const std::vector<double>& logs);

// Band of k_z(z)(1+|z|^2)e^{-2phi(z)} over z = e^t.
RatioBand kernel_estimate_audit(const KernelTable& tab, const std::vector<double>& ts);

// log of sum |f(lambda)|^2 / k_lambda(lambda)
double log_discrete_norm2(const KernelTable& tab, const PointSeq& seq, const std::vector<LogComplex>& fvals);

}  // namespace focklab
