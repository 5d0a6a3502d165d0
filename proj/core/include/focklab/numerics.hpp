#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace focklab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Wraps into (-pi, pi].
double wrap_phase(double x);

// e^{i x}, exact at multiples of pi/2.
std::complex<double> unit_phasor(double x);

// z = exp(logmag + i phase). Zero is logmag = -inf.
struct LogComplex {
    double logmag = kNegInf;
    double phase = 0.0;

    static LogComplex zero() { return {}; }
    static LogComplex one() { return {0.0, 0.0}; }
    static LogComplex polar(double logmag, double phase);
    static LogComplex from_complex(std::complex<double> z);
    static LogComplex from_real(double x);

    bool is_zero() const { return logmag == kNegInf; }
    double abs() const;
    std::complex<double> to_complex() const;
    LogComplex conj() const;
    LogComplex operator-() const;
};

LogComplex operator*(const LogComplex& a, const LogComplex& b);
LogComplex operator/(const LogComplex& a, const LogComplex& b);
LogComplex operator+(const LogComplex& a, const LogComplex& b);
LogComplex operator-(const LogComplex& a, const LogComplex& b);

// 1 - exp(u + i v), accurate for every u including |u| large.
LogComplex one_minus_exp(double u, double v);

// Streaming sum of log-domain complex terms with rescaling.
class LogAccumulator {
public:
    void add(const LogComplex& term);
    LogComplex result() const;
    double max_logmag() const { return max_; }
    bool empty() const { return count_ == 0; }

private:
    double max_ = kNegInf;
    std::complex<double> sum_{0.0, 0.0};
    std::size_t count_ = 0;
};

LogComplex log_sum(const std::vector<LogComplex>& terms);
double log_sum_exp(const std::vector<double>& logs);

struct Extremes {
    double min = 0.0;
    double max = 0.0;
};

Extremes hermitian_extremes(const Eigen::MatrixXcd& a);

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod 7/15. Accepts infinite endpoints.
QuadResult adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                               double tol, int max_intervals = 4000);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5eed;

}  // namespace focklab
