#include "focklab/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/SVD>

#include "focklab/criterion.hpp"
#include "focklab/sequences.hpp"

namespace focklab {

GramSection gram_section(const KernelTable& tab, const PointSeq& seq, std::size_t i_lo, std::size_t i_hi) {
    if (i_hi > seq.size() || i_lo >= i_hi) throw std::out_of_range("invalid section bounds");
    std::size_t n = i_hi - i_lo;
    if (n > kMaxSection) throw std::invalid_argument("section too large");
    std::vector<LogPoint> pts(seq.points().begin() + static_cast<std::ptrdiff_t>(i_lo),
                              seq.points().begin() + static_cast<std::ptrdiff_t>(i_hi));
    GramSection g;
    g.seq = PointSeq(pts, seq.meta());
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = log_kernel_diag(tab, pts[i]);
    g.matrix = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            LogComplex k = kernel_value(tab, pts[i], pts[j]);
            std::complex<double> e{0.0, 0.0};
            if (!k.is_zero()) e = std::exp(std::min(0.0, k.logmag - 0.5 * (diag[i] + diag[j]))) * unit_phasor(k.phase);
            auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
            g.matrix(a, b) = e;
            g.matrix(b, a) = std::conj(e);
        }
    }
    Extremes ex = hermitian_extremes(g.matrix);
    g.lambda_min = ex.min;
    g.lambda_max = ex.max;
    g.cond = ex.min > 0.0 ? ex.max / ex.min : std::numeric_limits<double>::infinity();
    return g;
}

std::vector<TrendRow> riesz_trend(const KernelTable& tab, const PointSeq& seq, const std::vector<int>& sizes) {
    std::vector<TrendRow> out;
    int prev = 0;
    for (int s : sizes) {
        if (s <= prev) throw std::invalid_argument("sizes must be increasing and positive");
        if (static_cast<std::size_t>(s) > seq.size()) throw std::invalid_argument("size exceeds sequence length");
        prev = s;
        GramSection g = gram_section(tab, seq, 0, static_cast<std::size_t>(s));
        out.push_back({s, g.lambda_min, g.lambda_max, g.cond});
    }
    return out;
}

LagrangeBasis::LagrangeBasis(PointSeq nodes, double alpha) : f_(std::move(nodes), alpha) {
    deriv_.reserve(f_.zeros().size());
    for (std::size_t k = 0; k < f_.zeros().size(); ++k) deriv_.push_back(derivative_at_zero(f_, k));
}

LogComplex LagrangeBasis::basis(std::size_t n, const LogPoint& z) const { return basis(n, z, eval(f_, z)); }

LogComplex LagrangeBasis::basis(std::size_t n, const LogPoint& z, const EvalResult& fz) const {
    if (fz.exact_zero) return fz.zero_index == n ? LogComplex::one() : LogComplex::zero();
    return fz.value / (deriv_[n] * difference(z, nodes()[n]));
}

LogComplex LagrangeBasis::interpolate(const std::vector<LogComplex>& values, const LogPoint& z) const {
    if (values.size() != nodes().size()) throw std::invalid_argument("value count differs from node count");
    EvalResult fz = eval(f_, z);
    if (fz.exact_zero) return values[fz.zero_index];
    LogAccumulator acc;
    for (std::size_t n = 0; n < values.size(); ++n) {
        if (values[n].is_zero()) continue;
        acc.add(values[n] / (deriv_[n] * difference(z, nodes()[n])));
    }
    if (acc.empty()) return LogComplex::zero();
    return fz.value * acc.result();
}

Eigen::MatrixXcd BiorthMatrix::materialized() const {
    auto n = static_cast<Eigen::Index>(entries.size());
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = entries[i][j].to_complex();
    return a;
}

namespace {

void finish_matrix(BiorthMatrix& b) {
    b.unbounded = false;
    for (const auto& row : b.entries)
        for (const auto& e : row)
            if (e.logmag > 40.0) b.unbounded = true;
    if (b.unbounded) {
        b.opnorm2 = std::numeric_limits<double>::infinity();
        return;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b.materialized());
    b.opnorm2 = svd.singularValues()(0);
}

void check_size(const PointSeq& lattice, const PointSeq& target, std::size_t size, std::size_t cut) {
    if (size == 0) throw std::invalid_argument("empty section");
    if (size + cut > std::min(lattice.size(), target.size()))
        throw std::invalid_argument("section exceeds the sequences minus the boundary cut");
}

}  // namespace

BiorthMatrix biorth_matrix(const KernelTable& tab, const PointSeq& lattice, const PointSeq& target, std::size_t size,
                           std::size_t boundary_cut) {
    check_size(lattice, target, size, boundary_cut);
    LagrangeBasis basis(target, tab.alpha);
    BiorthMatrix b;
    b.lattice = lattice;
    b.target = target;
    std::vector<double> kl(size), kg(size);
    for (std::size_t i = 0; i < size; ++i) {
        kl[i] = 0.5 * log_kernel_diag(tab, target[i]);
        kg[i] = 0.5 * log_kernel_diag(tab, lattice[i]);
    }
    b.entries.assign(size, std::vector<LogComplex>(size));
    for (std::size_t m = 0; m < size; ++m) {
        EvalResult fz = eval(basis.genfun(), lattice[m]);
        for (std::size_t n = 0; n < size; ++n)
            b.entries[n][m] = basis.basis(n, lattice[m], fz) * LogComplex::polar(kl[n] - kg[m], 0.0);
    }
    finish_matrix(b);
    return b;
}

BiorthMatrix biorth_matrix_finfty(double alpha, const PointSeq& lattice, const PointSeq& target, std::size_t size,
                                  std::size_t boundary_cut) {
    check_size(lattice, target, size, boundary_cut);
    Weight w(alpha);
    LagrangeBasis basis(target, alpha);
    BiorthMatrix b;
    b.lattice = lattice;
    b.target = target;
    b.entries.assign(size, std::vector<LogComplex>(size));
    for (std::size_t m = 0; m < size; ++m) {
        EvalResult fz = eval(basis.genfun(), lattice[m]);
        for (std::size_t n = 0; n < size; ++n)
            b.entries[n][m] = basis.basis(n, lattice[m], fz) * LogComplex::polar(w.phi(target[n]) - w.phi(lattice[m]), 0.0);
    }
    finish_matrix(b);
    return b;
}

DecayFit decay_fit(const BiorthMatrix& a) {
    std::size_t n = a.entries.size();
    DecayFit fit;
    fit.envelope.assign(n, kNegInf);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t d = i > j ? i - j : j - i;
            fit.envelope[d] = std::max(fit.envelope[d], a.entries[i][j].logmag);
        }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t d = 1; d < n; ++d) {
        if (fit.envelope[d] == kNegInf) continue;
        double x = static_cast<double>(d), y = fit.envelope[d];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    for (auto& e : fit.envelope) e = std::exp(e);
    if (cnt < 2) return fit;
    double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    double icpt = (sy - slope * sx) / cnt;
    fit.kappa = -slope;
    fit.C = std::exp(icpt);
    return fit;
}

Precondition interpolation_precondition(const PointSeq& target, double alpha) {
    Precondition p;
    Separation s = is_separated(Weight(alpha), target);
    p.separated = s.separated;
    p.d_min = s.d_min;
    p.delta_sup = 0.0;
    p.bounded = true;
    for (double d : decompose(alpha, target)) {
        if (!std::isfinite(d)) p.bounded = false;
        p.delta_sup = std::max(p.delta_sup, std::fabs(d));
    }
    return p;
}

namespace {

Interpolation run_interpolation(const PointSeq& target, double alpha, const std::vector<LogComplex>& values,
                                const std::vector<LogPoint>& eval_at) {
    for (const auto& v : values)
        if (std::isnan(v.logmag) || v.logmag == std::numeric_limits<double>::infinity())
            throw std::invalid_argument("non-finite interpolation value");
    LagrangeBasis basis(target, alpha);
    Weight w(alpha);
    Interpolation out;
    out.values.reserve(eval_at.size());
    for (const auto& z : eval_at) {
        LogComplex f = basis.interpolate(values, z);
        out.values.push_back(f);
        out.log_sup_weighted = std::max(out.log_sup_weighted, f.logmag - w.phi(z));
    }
    return out;
}

}  // namespace

Interpolation interpolate_f2(const PointSeq& target, double alpha, const std::vector<LogComplex>& values,
                             const std::vector<LogPoint>& eval_at) {
    Interpolation out = run_interpolation(target, alpha, values, eval_at);
    out.precondition = interpolation_precondition(target, alpha);
    return out;
}

Interpolation interpolate_finfty(const PointSeq& target, double alpha, const std::vector<LogComplex>& values,
                                 const std::vector<LogPoint>& eval_at, std::size_t extra_index) {
    Interpolation out = run_interpolation(target, alpha, values, eval_at);
    out.precondition = interpolation_precondition(remove_index(target, extra_index), alpha);
    return out;
}

namespace {

double node_mismatch(const LagrangeBasis& basis, const std::vector<LogComplex>& v, double log_scale_max) {
    double err = 0.0;
    for (std::size_t n = 0; n < basis.nodes().size(); ++n) {
        std::complex<double> got = (basis.interpolate(v, basis.nodes()[n]) * LogComplex::polar(-log_scale_max, 0.0)).to_complex();
        std::complex<double> want = (v[n] * LogComplex::polar(-log_scale_max, 0.0)).to_complex();
        err = std::max(err, std::abs(got - want));
    }
    return err;
}

}  // namespace

ControlAudit f2_control_audit(const KernelTable& tab, const PointSeq& target, std::size_t support, const PointSeq& grid,
                              int trials, std::uint64_t seed) {
    if (support == 0 || support > target.size()) throw std::invalid_argument("invalid support size");
    LagrangeBasis basis(target, tab.alpha);
    Rng rng(seed);
    ControlAudit out;
    for (int k = 0; k < trials; ++k) {
        std::vector<LogComplex> v(target.size(), LogComplex::zero());
        double b2 = 0.0;
        for (std::size_t n = 0; n < support; ++n) {
            std::complex<double> b(rng.normal(), rng.normal());
            b2 += std::norm(b);
            v[n] = LogComplex::from_complex(b) * LogComplex::polar(0.5 * log_kernel_diag(tab, target[n]), 0.0);
        }
        std::vector<LogComplex> f;
        f.reserve(grid.size());
        for (const auto& z : grid) f.push_back(basis.interpolate(v, z));
        double r = std::exp(0.5 * (log_discrete_norm2(tab, grid, f) - std::log(b2)));
        out.ratios.push_back(r);
        out.constant = std::max(out.constant, r);
        double scale = kNegInf;
        for (const auto& x : v) scale = std::max(scale, x.logmag);
        out.lagrange_error = std::max(out.lagrange_error, node_mismatch(basis, v, scale));
    }
    return out;
}

ControlAudit finfty_control_audit(double alpha, const PointSeq& target, std::size_t support,
                                  const std::vector<LogPoint>& grid, int trials, std::uint64_t seed) {
    if (support == 0 || support > target.size()) throw std::invalid_argument("invalid support size");
    LagrangeBasis basis(target, alpha);
    Weight w(alpha);
    Rng rng(seed);
    ControlAudit out;
    for (int k = 0; k < trials; ++k) {
        std::vector<LogComplex> v(target.size(), LogComplex::zero());
        for (std::size_t n = 0; n < support; ++n) v[n] = LogComplex::polar(w.phi(target[n]), rng.uniform(-kPi, kPi));
        double s = kNegInf;
        for (const auto& z : grid) s = std::max(s, basis.interpolate(v, z).logmag - w.phi(z));
        double r = std::exp(s);
        out.ratios.push_back(r);
        out.constant = std::max(out.constant, r);
        double err = 0.0;
        for (std::size_t n = 0; n < target.size(); ++n) {
            LogComplex got = basis.interpolate(v, target[n]) * LogComplex::polar(-w.phi(target[n]), 0.0);
            LogComplex want = v[n] * LogComplex::polar(-w.phi(target[n]), 0.0);
            err = std::max(err, std::abs(got.to_complex() - want.to_complex()));
        }
        out.lagrange_error = std::max(out.lagrange_error, err);
    }
    return out;
}

std::vector<LogPoint> log_polar_grid(double t_lo, double t_hi, int n_t, int n_theta) {
    if (n_t < 2 || n_theta < 1 || !(t_hi > t_lo)) throw std::invalid_argument("invalid grid");
    std::vector<LogPoint> g;
    g.reserve(static_cast<std::size_t>(n_t) * static_cast<std::size_t>(n_theta));
    for (int i = 0; i < n_t; ++i)
        for (int k = 0; k < n_theta; ++k)
            g.push_back({t_lo + (t_hi - t_lo) * i / (n_t - 1), -kPi + 2.0 * kPi * (k + 0.5) / n_theta});
    return g;
}

RatioBand sampling_audit_f2(const KernelTable& tab, const PointSeq& seq, const TestFamily& family) {
    std::vector<double> logs;
    if (const auto* mono = std::get_if<Monomials>(&family)) {
        if (mono->m_max < 0 || mono->m_max > tab.n_max()) throw std::invalid_argument("monomial degree outside table");
        for (int m = 0; m <= mono->m_max; ++m) {
            std::vector<LogComplex> f;
            f.reserve(seq.size());
            for (const auto& p : seq) f.push_back(p.is_origin() ? (m == 0 ? LogComplex::one() : LogComplex::zero())
                                                               : LogComplex::polar(m * p.t, m * p.theta));
            logs.push_back(log_discrete_norm2(tab, seq, f) - tab.logc[m]);
        }
    } else if (const auto* ker = std::get_if<Kernels>(&family)) {
        for (const auto& w : ker->w) {
            std::vector<LogComplex> f;
            f.reserve(seq.size());
            for (const auto& p : seq) f.push_back(kernel_value(tab, p, w));
            logs.push_back(log_discrete_norm2(tab, seq, f) - log_kernel_diag(tab, w));
        }
    } else {
        const auto& bi = std::get<Biorthogonal>(family);
        LagrangeBasis basis(bi.target, tab.alpha);
        auto values_on = [&](const PointSeq& s, std::size_t n) {
            std::vector<LogComplex> f;
            f.reserve(s.size());
            for (const auto& p : s) f.push_back(basis.basis(n, p));
            return f;
        };
        for (std::size_t n : bi.indices) {
            if (n >= bi.target.size()) throw std::out_of_range("biorthogonal index out of range");
            logs.push_back(log_discrete_norm2(tab, seq, values_on(seq, n)) -
                           log_discrete_norm2(tab, bi.reference, values_on(bi.reference, n)));
        }
    }
    return band_from_logs(logs);
}

PointSeq perturb(const PointSeq& base, double alpha, double d_rho_step, Rng& rng) {
    Weight w(alpha);
    double rho = std::sqrt(2.0 * alpha);
    std::vector<LogPoint> pts;
    pts.reserve(base.size());
    for (const auto& g : base) {
        double psi = rng.uniform(-kPi, kPi);
        double u = rng.uniform();
        if (d_rho_step == 0.0 || g.is_origin()) {
            pts.push_back(g);
            continue;
        }
        double r = std::min(0.5, u * d_rho_step * (rho + std::exp(g.t)) / (rho * std::exp(g.t)));
        LogPoint z = g;
        for (int it = 0; it < 200; ++it) {
            std::complex<double> f = 1.0 + r * std::polar(1.0, psi);
            z = {g.t + std::log(std::abs(f)), g.theta + std::arg(f)};
            if (d_rho(w, g, z) <= d_rho_step) break;
            r *= 0.5;
        }
        pts.push_back(z);
    }
    return PointSeq(std::move(pts), "perturbed(" + base.meta() + ")");
}

StabilityReport perturbation_stability_audit(const KernelTable& tab, const PointSeq& base, double d_rho_step,
                                             int trials, int m_max, std::uint64_t seed) {
    if (!(d_rho_step >= 0.0)) throw std::invalid_argument("step must be nonnegative");
    StabilityReport rep;
    rep.baseline = sampling_audit_f2(tab, base, Monomials{m_max}).lo;
    rep.worst = rep.baseline;
    Rng rng(seed);
    for (int k = 0; k < trials; ++k) {
        PointSeq p = perturb(base, tab.alpha, d_rho_step, rng);
        double lo = sampling_audit_f2(tab, p, Monomials{m_max}).lo;
        rep.per_trial.push_back(lo);
        rep.worst = std::min(rep.worst, lo);
    }
    return rep;
}

BlowupResult blowup_fn(double alpha, const PointSeq& gamma2, int n, const std::vector<LogPoint>& eval_grid) {
    std::vector<double> moduli;
    for (const auto& p : gamma2)
        if (moduli.empty() || p.t != moduli.back()) moduli.push_back(p.t);
    if (n < 0 || static_cast<std::size_t>(n) + 2 >= moduli.size())
        throw std::invalid_argument("n too large for the stored node set");
    Weight w(alpha);
    LagrangeBasis basis(gamma2, alpha);
    LogPoint zn{moduli[static_cast<std::size_t>(n) + 1], 0.5 * kPi};
    EvalResult fz = eval(basis.genfun(), zn);
    std::vector<LogComplex> eps(gamma2.size(), LogComplex::zero());
    LogAccumulator acc;
    BlowupResult r;
    for (std::size_t k = 0; k < gamma2.size(); ++k) {
        if (gamma2[k].t > moduli[static_cast<std::size_t>(n)]) continue;
        LogComplex g = basis.basis(k, zn, fz);
        eps[k] = LogComplex::polar(w.phi(gamma2[k]), -g.phase);
        acc.add(eps[k] * g);
        ++r.nodes_used;
    }
    r.value = std::exp(acc.result().logmag - w.phi(zn));
    double ns = kNegInf;
    for (const auto& p : gamma2) ns = std::max(ns, basis.interpolate(eps, p).logmag - w.phi(p));
    r.node_sup = std::exp(ns);
    double gs = kNegInf;
    for (const auto& z : eval_grid) gs = std::max(gs, basis.interpolate(eps, z).logmag - w.phi(z));
    r.grid_sup = std::exp(gs);
    return r;
}

}  // namespace focklab
