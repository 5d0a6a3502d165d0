#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "focklab/baselines.hpp"
#include "focklab/completion.hpp"
#include "focklab/criterion.hpp"
#include "focklab/debranges.hpp"
#include "focklab/density.hpp"
#include "focklab/frames.hpp"
#include "focklab/genfun.hpp"
#include "focklab/kernel.hpp"
#include "focklab/sequences.hpp"

using namespace focklab;

namespace {

constexpr double kAlpha = 0.5;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome criterion_threshold() {
    std::ostringstream os;
    bool ok = true;
    std::vector<double> passed;
    for (int k = 0; k <= 14; ++k) {
        double d = 0.05 * k;
        PointSeq s = gallery("constant_shift", kAlpha, 255, {{"d", d}});
        CriterionReport r = check_riesz_f2(s, kAlpha);
        bool expect = d < 0.5 - 1e-12;
        bool got = r.verdict == Verdict::pass;
        if (got != expect) {
            ok = false;
            os << "d=" << d << " verdict " << to_string(r.verdict) << "; ";
        }
        if (got) passed.push_back(d);
    }
    os << "passes for d in [0, " << (passed.empty() ? -1.0 : passed.back()) << "], fails from 0.5 on";
    return {ok, os.str()};
}

Outcome criterion_avdonin() {
    PointSeq s = gallery("avdonin_blocks", kAlpha, 255, {{"amplitude", 0.6}, {"block", 8}});
    auto prof = window_profile(s, kAlpha, {1, 16});
    CriterionReport r1 = check_riesz_f2(s, kAlpha, 1);
    CriterionReport r16 = check_riesz_f2(s, kAlpha, 16);
    double s1 = prof[0].sup_avg, s16 = prof[1].sup_avg;
    bool ok = r1.verdict == Verdict::fail_window && r16.verdict == Verdict::pass && s1 > 0.5 && s16 <= 0.3 &&
              s16 < 0.5;
    return {ok, "sup_avg(1)=" + fmt("%.4f", s1) + " sup_avg(16)=" + fmt("%.4f", s16) + " verdicts " +
                    to_string(r1.verdict) + "/" + to_string(r16.verdict)};
}

Outcome criterion_biorth() {
    KernelTable tab = moments(kAlpha, 256);
    PointSeq g = reference_gamma(kAlpha, 63);
    BiorthMatrix a = biorth_matrix(tab, g, g, 48);
    double off = 0.0, diag = 0.0;
    for (std::size_t n = 0; n < 48; ++n)
        for (std::size_t m = 0; m < 48; ++m) {
            std::complex<double> e = a.entries[n][m].to_complex();
            if (n == m)
                diag = std::max(diag, std::abs(e - 1.0));
            else
                off = std::max(off, std::abs(e));
        }
    return {off <= 1e-10 && diag <= 1e-10, "max off-diagonal " + fmt("%.2e", off) + ", max |diag-1| " + fmt("%.2e", diag)};
}

Outcome criterion_gram_trend() {
    KernelTable tab = moments(kAlpha, table_size_for(kAlpha, 140.0));
    std::vector<int> sizes{8, 16, 32, 64};
    auto tg = riesz_trend(tab, reference_gamma(kAlpha, 63), sizes);
    auto tp = riesz_trend(tab, gallery("two_sided", kAlpha, 40), sizes);
    auto tc = riesz_trend(tab, gallery("critical_shift", kAlpha, 63, {{"delta", 0.5}}), sizes);
    double cg = tg.back().cond / tg.front().cond;
    double lp = tp.back().lambda_min / tp.front().lambda_min;
    double lc = tc.back().lambda_min / tc.front().lambda_min;
    bool ok = cg <= 2.0 && lp <= 0.5 && lc <= 0.5;
    return {ok, "reference cond(64)/cond(8)=" + fmt("%.3f", cg) + " (cond " + fmt("%.1f", tg.front().cond) + " -> " +
                    fmt("%.1f", tg.back().cond) + "), two-sided lambda_min ratio " + fmt("%.3e", lp) +
                    ", critical lambda_min ratio " + fmt("%.3e", lc)};
}

Outcome criterion_kernel_band() {
    KernelTable tab = moments(kAlpha, table_size_for(kAlpha, 20.0));
    std::vector<double> ts;
    for (int i = 0; i <= 400; ++i) ts.push_back(20.0 * i / 400.0);
    RatioBand b = kernel_estimate_audit(tab, ts);
    double rel = std::fabs(b.spread() / baselines::kKernelBandSpread - 1.0);
    double rlo = std::fabs(b.lo / baselines::kKernelBandLo - 1.0);
    double rhi = std::fabs(b.hi / baselines::kKernelBandHi - 1.0);
    bool ok = b.spread() <= 10.0 && rel <= 0.01 && rlo <= 0.01 && rhi <= 0.01;
    return {ok, "band [" + fmt("%.6f", b.lo) + ", " + fmt("%.6f", b.hi) + "] hi/lo=" + fmt("%.5f", b.spread()) +
                    " vs baseline " + fmt("%.5f", baselines::kKernelBandSpread)};
}

Outcome criterion_envelopes() {
    GenFun fg(reference_gamma(kAlpha, 99), kAlpha);
    GenFun fp(gallery("two_sided", kAlpha, 59), kAlpha);
    double tmax = 0.8 * 41.0;
    RatioBand bg = envelope_audit(fg, 1.5, envelope_sample(fg, 200, 2.0, tmax));
    RatioBand bp = envelope_audit(fp, 2.0, envelope_sample(fp, 200, 2.0, tmax));
    std::vector<double> wg, wp;
    for (double tm : {10.0, 20.0, 30.0}) {
        wg.push_back(envelope_audit(fg, 2.0, envelope_sample(fg, 200, 2.0, tm)).spread());
        wp.push_back(envelope_audit(fp, 1.5, envelope_sample(fp, 200, 2.0, tm)).spread());
    }
    bool mono = wg[0] < wg[1] && wg[1] < wg[2] && wp[0] < wp[1] && wp[1] < wp[2];
    bool ok = bg.spread() <= 50.0 && bp.spread() <= 50.0 && mono;
    return {ok, "reference(3/2) hi/lo=" + fmt("%.2f", bg.spread()) + ", two-sided(2) hi/lo=" + fmt("%.2f", bp.spread()) +
                    "; wrong exponents " + fmt("%.3g", wg[0]) + "," + fmt("%.3g", wg[1]) + "," + fmt("%.3g", wg[2]) +
                    " and " + fmt("%.3g", wp[0]) + "," + fmt("%.3g", wp[1]) + "," + fmt("%.3g", wp[2])};
}

Outcome criterion_jensen() {
    GenFun f(reference_gamma(kAlpha, 40), kAlpha, std::nullopt);
    bool ok = true;
    std::string d;
    for (double tr : {5.5, 10.5, 15.5}) {
        JensenResult j = jensen_audit(f, tr);
        ok = ok && j.discrepancy <= 1e-6 + j.tail_bound;
        d += "t_R=" + fmt("%.1f", tr) + ": " + fmt("%.2e", j.discrepancy) + " ";
    }
    return {ok, d + "(bound 1e-6 + tail)"};
}

Outcome criterion_density() {
    std::vector<double> logR{4, 8, 16};
    PointSeq g = reference_gamma(kAlpha, 399);
    auto check = [&](const PointSeq& s, double target, std::string& out) {
        DensityReport r = densities(s, logR, default_offsets(s, 0.5));
        out += "[" + fmt("%.3f", r.d_minus) + "," + fmt("%.3f", r.d_plus) + "] ";
        return std::fabs(r.d_minus - target) <= 0.25 && std::fabs(r.d_plus - target) <= 0.25;
    };
    std::string d;
    bool ok = check(g, 2 * kAlpha, d);
    ok = check(every_other(g), kAlpha, d) && ok;
    ok = check(merge(g, rotate(g, kPi / 2)), 4 * kAlpha, d) && ok;
    PointSeq interp = reference_gamma(0.8 * kAlpha, 300);
    std::vector<double> logx;
    for (int k = 0; k <= 100; ++k) logx.push_back(2.0 + 1.0 * k);
    SlackReport rs = rs_comparison_audit(interp, g, 0.5, 10.0, logx);
    ok = ok && rs.min_slack >= 0.0;
    return {ok, "densities " + d + "RS slack " + fmt("%.2f", rs.min_slack)};
}

bool contains_all(const PointSeq& big, const PointSeq& small) {
    std::size_t j = 0;
    for (const auto& p : small) {
        while (j < big.size() && !same_point(big[j], p)) ++j;
        if (j == big.size()) return false;
    }
    return true;
}

Outcome criterion_completion() {
    PointSeq g = reference_gamma(kAlpha, 511);
    PointSeq half = every_other(g);
    CompletionResult c = complete_to_ci(half, kAlpha);
    CriterionReport rc = check_riesz_f2(c.sequence, kAlpha);
    bool inc = contains_all(c.sequence, half) && c.sequence.size() == half.size() + c.changed.size();
    double wc = 0.0;
    for (double s : c.group_sums) wc = std::max(wc, std::fabs(s));

    PointSeq dbl = merge(g, rotate(g, kPi / 2));
    CompletionResult t = thin_to_ci(dbl, kAlpha);
    CriterionReport rt = check_riesz_f2(t.sequence, kAlpha);
    bool inc2 = contains_all(dbl, t.sequence);
    double wt = 0.0;
    for (double s : t.group_sums) wt = std::max(wt, std::fabs(s));

    bool ok = rc.verdict == Verdict::pass && rc.margin > 0 && inc && wc <= c.bound && rt.verdict == Verdict::pass &&
              rt.margin > 0 && inc2 && wt <= t.bound;
    return {ok, "completion margin " + fmt("%.3f", rc.margin) + " max|group sum| " + fmt("%.3f", wc) + "/" +
                    fmt("%.3f", c.bound) + "; thinning margin " + fmt("%.3f", rt.margin) + " max|group sum| " +
                    fmt("%.3f", wt) + "/" + fmt("%.3f", t.bound) + (inc && inc2 ? "; inclusion exact" : "; inclusion broken")};
}

Outcome criterion_interpolation() {
    KernelTable tab = moments(kAlpha, table_size_for(kAlpha, 110.0));
    PointSeq target = gallery("constant_shift", kAlpha, 63, {{"d", 0.3}});
    ControlAudit f2 = f2_control_audit(tab, target, 32, reference_gamma(kAlpha, 95), 20);
    PointSeq tilde = insert_point(reference_gamma(kAlpha, 63), LogPoint{0.0, 0.0});
    ControlAudit fi = finfty_control_audit(kAlpha, tilde, 33, log_polar_grid(-2.0, 40.0, 421, 64), 20);
    bool ok = f2.lagrange_error <= 1e-8 && fi.lagrange_error <= 1e-8 &&
              std::fabs(f2.constant / baselines::kInterpF2Constant - 1.0) <= 0.10 &&
              std::fabs(fi.constant / baselines::kInterpFinftyConstant - 1.0) <= 0.10;
    return {ok, "Lagrange errors " + fmt("%.1e", f2.lagrange_error) + "/" + fmt("%.1e", fi.lagrange_error) +
                    "; F2 constant " + fmt("%.6f", f2.constant) + " (baseline " + fmt("%.4f", baselines::kInterpF2Constant) +
                    "), sup constant " + fmt("%.6f", fi.constant) + " (baseline " +
                    fmt("%.4f", baselines::kInterpFinftyConstant) + ")"};
}

Outcome criterion_blowup() {
    PointSeq g2 = gallery("gamma2", kAlpha, 40);
    BlowupResult b8 = blowup_fn(kAlpha, g2, 8), b16 = blowup_fn(kAlpha, g2, 16);
    double ratio = b16.value / b8.value;
    bool ok = ratio >= 1.7 && std::fabs(b8.node_sup - 1.0) <= 1e-8 && std::fabs(b16.node_sup - 1.0) <= 1e-8;
    return {ok, "value(8)=" + fmt("%.4f", b8.value) + " value(16)=" + fmt("%.4f", b16.value) + " ratio " +
                    fmt("%.3f", ratio) + ", node sup " + fmt("%.12f", b16.node_sup)};
}

Outcome criterion_debranges() {
    KernelTable tab = moments(kAlpha, 32);
    GenFun g(reference_gamma(kAlpha, 80, AngleRule::neg_imag()), kAlpha);
    bool ok = true;
    std::string d;
    for (Ray r : {Ray::full, Ray::positive, Ray::negative}) {
        RatioBand b = line_band(debranges_line_audit(tab, g, 15, r));
        ok = ok && b.spread() <= 10.0;
        d += to_string(r) + " " + fmt("%.3f", b.spread()) + " ";
    }
    RatioBand s = halfline_sup_audit(Weight(kAlpha), random_polynomials(kAlpha, 50, 30), 0.0);
    ok = ok && std::isfinite(s.hi) && s.hi <= baselines::kHalflineSupHi;
    return {ok, "line hi/lo: " + d + "; half-line sup band [" + fmt("%.6f", s.lo) + ", " + fmt("%.6f", s.hi) +
                    "] vs committed " + fmt("%.4f", baselines::kHalflineSupHi)};
}

Outcome criterion_perturbation() {
    KernelTable tab = moments(kAlpha, table_size_for(kAlpha, 70.0));
    StabilityReport r = perturbation_stability_audit(tab, reference_gamma(kAlpha, 63), 0.05, 20);
    bool ok = r.worst >= 0.5 * r.baseline;
    return {ok, "baseline lower ratio " + fmt("%.4f", r.baseline) + ", worst " + fmt("%.4f", r.worst) + " (" +
                    fmt("%.3f", r.worst / r.baseline) + " of baseline)"};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"threshold sweep of constant shifts", criterion_threshold},
        {"block-alternating windows", criterion_avdonin},
        {"biorthogonal identity", criterion_biorth},
        {"Gram boundedness vs degeneration", criterion_gram_trend},
        {"kernel norm band", criterion_kernel_band},
        {"generating function envelopes", criterion_envelopes},
        {"Jensen identity", criterion_jensen},
        {"density estimators", criterion_density},
        {"completion and thinning", criterion_completion},
        {"interpolation operators", criterion_interpolation},
        {"blow-up growth", criterion_blowup},
        {"line and half-line audits", criterion_debranges},
        {"perturbation stability", criterion_perturbation},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failed;
        std::printf("%s %2zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
