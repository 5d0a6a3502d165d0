#include "focklab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace focklab {

double wrap_phase(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite phase");
    double r = std::remainder(x, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

std::complex<double> unit_phasor(double x) {
    double w = wrap_phase(x);
    if (w == 0.0) return {1.0, 0.0};
    if (w == kPi) return {-1.0, 0.0};
    if (w == 0.5 * kPi) return {0.0, 1.0};
    if (w == -0.5 * kPi) return {0.0, -1.0};
    return {std::cos(w), std::sin(w)};
}

LogComplex LogComplex::polar(double logmag, double phase) {
    if (std::isnan(logmag)) throw std::domain_error("NaN log-magnitude");
    if (logmag == kNegInf) return zero();
    return {logmag, wrap_phase(phase)};
}

LogComplex LogComplex::from_complex(std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0)) return zero();
    return polar(std::log(std::abs(z)), std::arg(z));
}

LogComplex LogComplex::from_real(double x) { return from_complex({x, 0.0}); }

double LogComplex::abs() const { return std::exp(logmag); }

std::complex<double> LogComplex::to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    return std::exp(logmag) * unit_phasor(phase);
}

LogComplex LogComplex::conj() const {
    if (is_zero()) return zero();
    return {logmag, wrap_phase(-phase)};
}

LogComplex LogComplex::operator-() const {
    if (is_zero()) return zero();
    return {logmag, wrap_phase(phase + kPi)};
}

LogComplex operator*(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero() || b.is_zero()) return LogComplex::zero();
    return LogComplex::polar(a.logmag + b.logmag, a.phase + b.phase);
}

LogComplex operator/(const LogComplex& a, const LogComplex& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.is_zero()) return LogComplex::zero();
    return LogComplex::polar(a.logmag - b.logmag, a.phase - b.phase);
}

LogComplex operator+(const LogComplex& a, const LogComplex& b) { return log_sum({a, b}); }
LogComplex operator-(const LogComplex& a, const LogComplex& b) { return log_sum({a, -b}); }

LogComplex one_minus_exp(double u, double v) {
    if (std::isnan(u) || std::isnan(v)) throw std::domain_error("NaN argument");
    if (u == kNegInf) return LogComplex::one();
    if (u > 0.0) {
        // 1 - e^{w} = -e^{w} (1 - e^{-w})
        LogComplex inner = one_minus_exp(-u, -v);
        if (inner.is_zero()) return inner;
        return LogComplex::polar(u + inner.logmag, v + kPi + inner.phase);
    }
    double eu = std::exp(u);
    double s = std::sin(0.5 * v);
    double re = -std::expm1(u) + 2.0 * eu * s * s;
    double im = -eu * std::sin(v);
    if (re == 0.0 && im == 0.0) return LogComplex::zero();
    double logmag;
    if (eu < 0.5) {
        logmag = 0.5 * std::log1p(eu * eu - 2.0 * eu * std::cos(v));
    } else {
        logmag = 0.5 * std::log(re * re + im * im);
    }
    return LogComplex::polar(logmag, std::atan2(im, re));
}

void LogAccumulator::add(const LogComplex& term) {
    if (std::isnan(term.logmag)) throw std::domain_error("NaN log-magnitude");
    ++count_;
    if (term.is_zero()) return;
    if (term.logmag > max_) {
        if (max_ != kNegInf) sum_ *= std::exp(max_ - term.logmag);
        max_ = term.logmag;
    }
    sum_ += std::exp(term.logmag - max_) * unit_phasor(term.phase);
}

LogComplex LogAccumulator::result() const {
    if (count_ == 0) throw std::invalid_argument("log_sum of an empty list");
    if (max_ == kNegInf) return LogComplex::zero();
    double m = std::abs(sum_);
    if (m == 0.0) return LogComplex::zero();
    return LogComplex::polar(max_ + std::log(m), std::arg(sum_));
}

LogComplex log_sum(const std::vector<LogComplex>& terms) {
    if (terms.empty()) throw std::invalid_argument("log_sum of an empty list");
    double mx = kNegInf;
    for (const auto& t : terms) {
        if (std::isnan(t.logmag)) throw std::domain_error("NaN log-magnitude");
        mx = std::max(mx, t.logmag);
    }
    if (mx == kNegInf) return LogComplex::zero();
    std::complex<double> s{0.0, 0.0};
    for (const auto& t : terms) {
        if (!t.is_zero()) s += std::exp(t.logmag - mx) * unit_phasor(t.phase);
    }
    double m = std::abs(s);
    if (m == 0.0) return LogComplex::zero();
    return LogComplex::polar(mx + std::log(m), std::arg(s));
}

double log_sum_exp(const std::vector<double>& logs) {
    if (logs.empty()) throw std::invalid_argument("log_sum_exp of an empty list");
    double mx = *std::max_element(logs.begin(), logs.end());
    if (std::isnan(mx)) throw std::domain_error("NaN log-magnitude");
    if (mx == kNegInf) return kNegInf;
    double s = 0.0;
    for (double l : logs) s += std::exp(l - mx);
    return mx + std::log(s);
}

Extremes hermitian_extremes(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols() || a.rows() == 0) throw std::invalid_argument("matrix must be square and nonempty");
    double scale = 1.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
                throw std::invalid_argument("non-finite matrix entry");
            scale = std::max(scale, std::abs(a(i, j)));
        }
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = i; j < a.cols(); ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > 1e-12 * scale)
                throw std::invalid_argument("matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error, absval;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    double fc = f(c);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[j];
        fv1[j] = f(c - dx);
        fv2[j] = f(c + dx);
        double s = fv1[j] + fv2[j];
        resk += kWgk[j] * s;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * s;
    }
    double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    double ah = std::abs(h);
    double err = std::abs((resk - resg) * h);
    resasc *= ah;
    resabs *= ah;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    double value = resk * h;
    if (!std::isfinite(value)) throw std::domain_error("non-finite integrand");
    return {a, b, value, err, resabs};
}

QuadResult integrate_finite(const std::function<double(double)>& f, double a, double b, double tol,
                            int max_intervals) {
    std::priority_queue<Segment> heap;
    Segment first = gk15(f, a, b);
    heap.push(first);
    double total = first.value, err = first.error, absval = first.absval;
    int evals = 15;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    while (err > tol * absval && err > 100.0 * eps * std::abs(total)) {
        if (static_cast<int>(heap.size()) >= max_intervals)
            throw std::runtime_error("quadrature did not converge within the subdivision budget");
        Segment s = heap.top();
        heap.pop();
        double m = 0.5 * (s.a + s.b);
        if (m <= s.a || m >= s.b) throw std::runtime_error("quadrature interval underflow");
        Segment l = gk15(f, s.a, m);
        Segment r = gk15(f, m, s.b);
        evals += 30;
        total += l.value + r.value - s.value;
        err += l.error + r.error - s.error;
        absval += l.absval + r.absval - s.absval;
        heap.push(l);
        heap.push(r);
        if (err <= tol * absval) {
            // recompute to avoid drift in the running sums
            double t2 = 0.0, e2 = 0.0, a2 = 0.0;
            auto copy = heap;
            while (!copy.empty()) {
                t2 += copy.top().value;
                e2 += copy.top().error;
                a2 += copy.top().absval;
                copy.pop();
            }
            total = t2;
            err = e2;
            absval = a2;
        }
    }
    return {total, err, evals};
}

}  // namespace

QuadResult adaptive_quadrature(const std::function<double(double)>& f, double a, double b, double tol,
                               int max_intervals) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("NaN endpoint");
    if (a == b) return {0.0, 0.0, 0};
    if (a > b) {
        QuadResult r = adaptive_quadrature(f, b, a, tol, max_intervals);
        r.value = -r.value;
        return r;
    }
    bool ainf = std::isinf(a), binf = std::isinf(b);
    if (ainf && binf) {
        QuadResult l = adaptive_quadrature(f, a, 0.0, tol, max_intervals);
        QuadResult r = adaptive_quadrature(f, 0.0, b, tol, max_intervals);
        return {l.value + r.value, l.error + r.error, l.evaluations + r.evaluations};
    }
    if (binf) {
        auto g = [&](double s) {
            double d = 1.0 - s;
            return f(a + s / d) / (d * d);
        };
        return integrate_finite(g, 0.0, 1.0, tol, max_intervals);
    }
    if (ainf) {
        auto g = [&](double s) {
            double d = 1.0 - s;
            return f(b - s / d) / (d * d);
        };
        return integrate_finite(g, 0.0, 1.0, tol, max_intervals);
    }
    return integrate_finite(f, a, b, tol, max_intervals);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

}  // namespace focklab
