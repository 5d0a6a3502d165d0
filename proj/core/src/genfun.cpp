#include "focklab/genfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace focklab {

namespace {

void validate_zeros(const PointSeq& zeros) {
    for (std::size_t k = 0; k < zeros.size(); ++k) {
        if (zeros[k].is_origin()) throw std::invalid_argument("zero at the origin is not allowed");
        if (k > 0 && same_point(zeros[k], zeros[k - 1])) throw std::invalid_argument("repeated zero");
    }
}

double log1p_modulus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

}  // namespace

std::optional<TailModel> infer_tail(const PointSeq& zeros) {
    if (zeros.size() < 2) return std::nullopt;
    std::size_t k = zeros.size() - 1;
    double last = zeros[k].t;
    int mult = 0;
    while (k < zeros.size() && zeros[k].t == last) {
        ++mult;
        if (k == 0) return std::nullopt;
        --k;
    }
    double prev = zeros[k].t;
    if (!(last > prev) || !std::isfinite(prev)) return std::nullopt;
    return TailModel{last + (last - prev), last - prev, mult};
}

GenFun::GenFun(PointSeq zeros, double alpha) : zeros_(std::move(zeros)), alpha_(alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    validate_zeros(zeros_);
    tail_ = infer_tail(zeros_);
}

GenFun::GenFun(PointSeq zeros, double alpha, std::optional<TailModel> tail)
    : zeros_(std::move(zeros)), alpha_(alpha), tail_(tail) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    validate_zeros(zeros_);
}

EvalResult eval(const GenFun& f, const LogPoint& z) {
    EvalResult r;
    if (z.is_origin()) {
        r.value = LogComplex::one();
        return r;
    }
    double lm = 0.0, ph = 0.0;
    const auto& zs = f.zeros();
    for (std::size_t k = 0; k < zs.size(); ++k) {
        double u = z.t - zs[k].t;
        double v = z.theta - zs[k].theta;
        if (u == 0.0 && wrap_phase(v) == 0.0) {
            r.exact_zero = true;
            r.zero_index = k;
            r.value = LogComplex::zero();
            return r;
        }
        LogComplex c = one_minus_exp(u, v);
        lm += c.logmag;
        ph += c.phase;
    }
    r.value = LogComplex::polar(lm, ph);
    if (const auto& tail = f.tail()) {
        double u = z.t - tail->next_t;
        r.tail_bound = u < -std::log(2.0)
                           ? 2.0 * tail->multiplicity * std::exp(u) / -std::expm1(-tail->spacing)
                           : std::numeric_limits<double>::infinity();
    }
    return r;
}

LogComplex derivative_at_zero(const GenFun& f, std::size_t k) {
    const auto& zs = f.zeros();
    if (k >= zs.size()) throw std::out_of_range("zero index out of range");
    const LogPoint& lam = zs[k];
    double lm = -lam.t, ph = kPi - lam.theta;
    for (std::size_t j = 0; j < zs.size(); ++j) {
        if (j == k) continue;
        LogComplex c = one_minus_exp(lam.t - zs[j].t, lam.theta - zs[j].theta);
        if (c.is_zero()) return LogComplex::zero();
        lm += c.logmag;
        ph += c.phase;
    }
    return LogComplex::polar(lm, ph);
}

double log_dist_to_zeros(const PointSeq& zeros, const LogPoint& z) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : zeros) best = std::min(best, log_abs_difference(z, p));
    return best;
}

RatioBand envelope_audit(const GenFun& f, double exponent, const std::vector<LogPoint>& sample) {
    Weight w(f.alpha());
    std::vector<double> logs;
    logs.reserve(sample.size());
    for (const auto& z : sample) {
        EvalResult e = eval(f, z);
        if (e.exact_zero) throw std::invalid_argument("envelope sample point coincides with a zero");
        logs.push_back(e.value.logmag + exponent * log1p_modulus(z.t) - w.phi(z) - log_dist_to_zeros(f.zeros(), z));
    }
    return band_from_logs(logs);
}

std::vector<LogPoint> envelope_sample(const GenFun& f, std::size_t count, double t_lo, double t_hi,
                                      std::uint64_t seed, double min_d_rho) {
    if (!(t_hi > t_lo)) throw std::invalid_argument("empty sampling range");
    Weight w(f.alpha());
    Rng rng(seed);
    std::vector<LogPoint> out;
    std::size_t attempts = 0;
    while (out.size() < count) {
        if (++attempts > 1000 * (count + 1)) throw std::runtime_error("could not place envelope samples");
        LogPoint z{rng.uniform(t_lo, t_hi), rng.uniform(-kPi, kPi)};
        bool ok = true;
        for (const auto& p : f.zeros()) {
            if (d_rho(w, z, p) < min_d_rho) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(z);
    }
    return out;
}

JensenResult jensen_audit(const GenFun& f, double t_R, int n_theta) {
    if (n_theta < 8) throw std::invalid_argument("too few circle samples");
    Weight w(f.alpha());
    for (const auto& p : f.zeros()) {
        if (d_rho(w, {t_R, p.theta}, p) < 0.05) throw std::invalid_argument("circle passes too close to a zero");
    }
    JensenResult r;
    double sum = 0.0;
    for (int j = 0; j < n_theta; ++j) {
        EvalResult e = eval(f, {t_R, 2.0 * kPi * j / n_theta});
        sum += e.value.logmag;
        r.tail_bound = std::max(r.tail_bound, e.tail_bound);
    }
    r.circle_mean = sum / n_theta;
    for (const auto& p : f.zeros())
        if (p.t < t_R) r.zero_sum += t_R - p.t;
    r.discrepancy = std::abs(r.circle_mean - r.zero_sum);
    return r;
}

}  // namespace focklab
