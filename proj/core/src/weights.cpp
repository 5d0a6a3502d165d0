#include "focklab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace focklab {

LogPoint LogPoint::from_complex(std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0)) return origin();
    return {std::log(std::abs(z)), std::arg(z)};
}

std::complex<double> LogPoint::to_complex() const {
    if (is_origin()) return {0.0, 0.0};
    return std::exp(t) * unit_phasor(theta);
}

LogComplex LogPoint::as_log() const {
    if (is_origin()) return LogComplex::zero();
    return LogComplex::polar(t, theta);
}

bool same_point(const LogPoint& a, const LogPoint& b) {
    if (a.is_origin() || b.is_origin()) return a.is_origin() && b.is_origin();
    return a.t == b.t && wrap_phase(a.theta - b.theta) == 0.0;
}

LogComplex difference(const LogPoint& z, const LogPoint& w) {
    if (w.is_origin()) return z.as_log();
    if (z.is_origin()) return -w.as_log();
    if (z.t >= w.t) {
        LogComplex f = one_minus_exp(w.t - z.t, w.theta - z.theta);
        return z.as_log() * f;
    }
    LogComplex f = one_minus_exp(z.t - w.t, z.theta - w.theta);
    return -(w.as_log() * f);
}

double log_abs_difference(const LogPoint& z, const LogPoint& w) { return difference(z, w).logmag; }

PointSeq::PointSeq(std::vector<LogPoint> pts, std::string meta) : pts_(std::move(pts)), meta_(std::move(meta)) {
    for (auto& p : pts_) {
        if (std::isnan(p.t) || p.t == std::numeric_limits<double>::infinity() || !std::isfinite(p.theta))
            throw std::invalid_argument("invalid point coordinates");
        p.theta = p.is_origin() ? 0.0 : wrap_phase(p.theta);
    }
    std::stable_sort(pts_.begin(), pts_.end(), [](const LogPoint& a, const LogPoint& b) {
        if (a.t != b.t) return a.t < b.t;
        return a.theta < b.theta;
    });
}

Weight::Weight(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
}

double Weight::phi(double t) const {
    if (t <= 0.0) return 0.0;
    return alpha_ * t * t;
}

DRho d_rho_flagged(const Weight& w, const LogPoint& z, const LogPoint& v) {
    double ld = log_abs_difference(z, v);
    if (ld == kNegInf) return {0.0, false};
    double s = std::min(z.t, v.t);
    double delta_t = std::max(z.t, v.t) - s;
    double rho = std::sqrt(2.0 * w.alpha());
    double log_den;
    if (s == kNegInf) {
        log_den = std::log(rho);
    } else if (s > 0.0) {
        log_den = s + std::log1p(rho * std::exp(-s));
    } else {
        log_den = std::log(rho + std::exp(s));
    }
    double logd = std::log(rho) + ld - log_den;
    bool saturated = std::isfinite(s) && delta_t > 40.0;
    double value = logd > 690.0 ? 1e300 : std::exp(logd);
    return {value, saturated};
}

double d_rho(const Weight& w, const LogPoint& z, const LogPoint& v) { return d_rho_flagged(w, z, v).value; }

namespace {

// log of sqrt(2a)(|w|-|z|)/(sqrt(2a)+|z|) for |z| <= |w|; monotone in |w|.
double log_radial_bound(double rho, double tz, double tw) {
    if (tz == kNegInf) return tw;
    double dt = tw - tz;
    if (dt <= 0.0) return kNegInf;
    double lnum = std::log(rho) + tz + (dt > 30.0 ? dt : std::log(std::expm1(dt)));
    double lden = tz > 0.0 ? tz + std::log1p(rho * std::exp(-tz)) : std::log(rho + std::exp(tz));
    return lnum - lden;
}

}  // namespace

Separation is_separated(const Weight& w, const PointSeq& seq) {
    Separation best;
    best.d_min = std::numeric_limits<double>::infinity();
    best.separated = true;
    double rho = std::sqrt(2.0 * w.alpha());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        for (std::size_t j = i + 1; j < seq.size(); ++j) {
            if (best.d_min < std::numeric_limits<double>::infinity() &&
                log_radial_bound(rho, seq[i].t, seq[j].t) >= std::log(best.d_min))
                break;
            double d = d_rho(w, seq[i], seq[j]);
            if (d < best.d_min) {
                best.d_min = d;
                best.i = i;
                best.j = j;
            }
        }
    }
    best.separated = best.d_min > 0.0;
    return best;
}

}  // namespace focklab
