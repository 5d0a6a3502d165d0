#include "focklab/debranges.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace focklab {

std::string to_string(Ray r) {
    switch (r) {
        case Ray::positive: return "positive";
        case Ray::negative: return "negative";
        case Ray::full: return "full";
    }
    return "unknown";
}

double LineAudit::quad_value() const { return std::exp(log_quad_value); }
double LineAudit::exact_norm() const { return std::exp(log_exact_norm); }
double LineAudit::ratio() const { return std::exp(log_quad_value - log_exact_norm); }

namespace {

// log of the integral over one ray at angle theta, scaled by exp(-shift)
double log_ray_integral(const GenFun& g, int m, double theta, double shift) {
    auto inner = [&](double x) {
        if (x <= 0.0) return m == 0 ? std::exp(-shift) : 0.0;
        double lx = std::log(x);
        double lg = eval(g, {lx, theta}).value.logmag;
        return std::exp(2.0 * m * lx - 2.0 * lg - shift);
    };
    auto outer = [&](double t) {
        double lg = eval(g, {t, theta}).value.logmag;
        return std::exp((2.0 * m + 1.0) * t - 2.0 * lg - shift);
    };
    double a = adaptive_quadrature(inner, 0.0, 1.0, 1e-11).value;
    double b = adaptive_quadrature(outer, 0.0, std::numeric_limits<double>::infinity(), 1e-11).value;
    double s = a + b;
    if (!(s > 0.0) || !std::isfinite(s)) throw std::runtime_error("line integral is not positive and finite");
    return std::log(s) + shift;
}

}  // namespace

std::vector<LineAudit> debranges_line_audit(const KernelTable& tab, const GenFun& g, int m_max, Ray ray, double scale) {
    if (m_max < 0 || m_max > tab.n_max()) throw std::invalid_argument("degree outside the moment table");
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
    for (const auto& z : g.zeros()) {
        double c = wrap_phase(z.theta);
        if ((ray != Ray::negative && c == 0.0) || (ray != Ray::positive && c == kPi))
            throw std::invalid_argument("a zero lies on the integration contour");
    }
    std::vector<LineAudit> out;
    for (int m = 0; m <= m_max; ++m) {
        double shift = tab.logc[m];
        double lq;
        if (ray == Ray::positive) {
            lq = log_ray_integral(g, m, 0.0, shift);
        } else if (ray == Ray::negative) {
            lq = log_ray_integral(g, m, kPi, shift);
        } else {
            lq = log_sum_exp({log_ray_integral(g, m, 0.0, shift), log_ray_integral(g, m, kPi, shift)});
        }
        out.push_back({ray, m, lq + 2.0 * std::log(scale), shift});
    }
    return out;
}

RatioBand line_band(const std::vector<LineAudit>& audits) {
    std::vector<double> logs;
    for (const auto& a : audits) logs.push_back(a.log_quad_value - a.log_exact_norm);
    return band_from_logs(logs);
}

LogComplex eval_poly(const Polynomial& p, const LogPoint& z) {
    if (p.coeffs.empty()) return LogComplex::zero();
    if (z.is_origin()) return p.coeffs[0];
    LogAccumulator acc;
    for (std::size_t k = 0; k < p.coeffs.size(); ++k)
        acc.add(p.coeffs[k] * LogComplex::polar(static_cast<double>(k) * z.t, static_cast<double>(k) * z.theta));
    return acc.result();
}

Polynomial rotate_poly(const Polynomial& p, double angle) {
    Polynomial q = p;
    for (std::size_t k = 0; k < q.coeffs.size(); ++k)
        q.coeffs[k] = q.coeffs[k] * LogComplex::polar(0.0, -static_cast<double>(k) * angle);
    return q;
}

std::vector<Polynomial> random_polynomials(double alpha, int count, int degree, std::uint64_t seed) {
    if (degree < 0 || count < 0) throw std::invalid_argument("invalid polynomial family");
    Rng rng(seed);
    std::vector<Polynomial> out;
    for (int i = 0; i < count; ++i) {
        Polynomial p;
        for (int k = 0; k <= degree; ++k) {
            std::complex<double> b(rng.normal(), rng.normal());
            p.coeffs.push_back(LogComplex::from_complex(b) * LogComplex::polar(-0.5 * log_moment(alpha, k), 0.0));
        }
        out.push_back(std::move(p));
    }
    return out;
}

double halfline_sup_ratio(const Weight& w, const Polynomial& p, double ray_angle, const SupGrid& grid) {
    if (grid.n_t < 2 || grid.n_theta < 1 || !(grid.t_hi > grid.t_lo)) throw std::invalid_argument("invalid grid");
    std::size_t deg = p.coeffs.size();
    std::vector<std::complex<double>> scaled(deg), step(deg);
    for (std::size_t k = 0; k < deg; ++k) step[k] = unit_phasor(2.0 * kPi * static_cast<double>(k) / grid.n_theta);
    double plane = kNegInf, ray = kNegInf;
    for (int i = 0; i < grid.n_t; ++i) {
        double t = grid.t_lo + (grid.t_hi - grid.t_lo) * i / (grid.n_t - 1);
        double top = kNegInf;
        for (std::size_t k = 0; k < deg; ++k) top = std::max(top, p.coeffs[k].logmag + static_cast<double>(k) * t);
        if (top == kNegInf) continue;
        for (std::size_t k = 0; k < deg; ++k) {
            const LogComplex& c = p.coeffs[k];
            scaled[k] = c.is_zero() ? 0.0
                                    : std::exp(c.logmag + static_cast<double>(k) * t - top) *
                                          unit_phasor(c.phase + static_cast<double>(k) * ray_angle);
        }
        for (int j = 0; j < grid.n_theta; ++j) {
            std::complex<double> sum = 0.0;
            for (std::size_t k = 0; k < deg; ++k) {
                sum += scaled[k];
                scaled[k] *= step[k];
            }
            double v = (std::abs(sum) > 0.0 ? std::log(std::abs(sum)) + top : kNegInf) - w.phi(t);
            plane = std::max(plane, v);
            if (j == 0) ray = std::max(ray, v);
        }
    }
    if (ray == kNegInf) throw std::invalid_argument("test function vanishes on the ray grid");
    return std::exp(plane - ray);
}

RatioBand halfline_sup_audit(const Weight& w, const std::vector<Polynomial>& polys, double ray_angle,
                             const SupGrid& grid) {
    std::vector<double> logs;
    for (const auto& p : polys) logs.push_back(std::log(halfline_sup_ratio(w, p, ray_angle, grid)));
    return band_from_logs(logs);
}

}  // namespace focklab
