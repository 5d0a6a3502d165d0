#include "focklab/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "focklab/sequences.hpp"
#include "focklab/weights.hpp"

namespace focklab {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail_separation: return "fail_separation";
        case Verdict::fail_bounded: return "fail_bounded";
        case Verdict::fail_window: return "fail_window";
    }
    return "unknown";
}

std::vector<WindowEntry> window_profile(const std::vector<double>& delta, const std::vector<int>& Ns, std::size_t cut) {
    std::size_t len = delta.size();
    std::vector<long double> prefix(len + 1, 0.0L);
    for (std::size_t k = 0; k < len; ++k) prefix[k + 1] = prefix[k] + delta[k];
    std::vector<WindowEntry> out;
    out.reserve(Ns.size());
    for (int N : Ns) {
        if (N < 1) throw std::invalid_argument("window length must be positive");
        std::size_t n = static_cast<std::size_t>(N);
        if (2 * cut + n > len) throw std::invalid_argument("no admissible window of the requested length");
        WindowEntry e{N, -1.0, cut};
        for (std::size_t s = cut; s + n + cut <= len; ++s) {
            double avg = static_cast<double>(std::fabs(prefix[s + n] - prefix[s])) / N;
            if (std::isnan(avg)) avg = std::numeric_limits<double>::infinity();
            if (avg > e.sup_avg) {
                e.sup_avg = avg;
                e.argmax = s;
            }
        }
        out.push_back(e);
    }
    return out;
}

std::vector<WindowEntry> window_profile(const PointSeq& seq, double alpha, const std::vector<int>& Ns) {
    if (Ns.empty()) return {};
    int cut = *std::max_element(Ns.begin(), Ns.end());
    return window_profile(decompose(alpha, seq), Ns, static_cast<std::size_t>(cut));
}

CriterionReport check_riesz_f2(const PointSeq& seq, double alpha, int N_max) {
    if (N_max < 1) throw std::invalid_argument("N_max must be positive");
    if (seq.size() < 4 * static_cast<std::size_t>(N_max))
        throw std::invalid_argument("sequence too short for the requested window range");
    Weight w(alpha);
    CriterionReport r;
    r.threshold = 1.0 / (4.0 * alpha);
    r.boundary_cut = static_cast<std::size_t>(N_max);

    Separation sep = is_separated(w, seq);
    r.d_min = sep.d_min;
    r.sep_i = sep.i;
    r.sep_j = sep.j;

    std::vector<double> delta = decompose(alpha, seq);
    std::size_t len = delta.size();
    r.delta_sup = 0.0;
    for (std::size_t k = r.boundary_cut; k + r.boundary_cut < len; ++k) {
        double a = std::fabs(delta[k]);
        if (!std::isfinite(a) || a > r.delta_sup) r.delta_sup = std::isfinite(a) ? a : std::numeric_limits<double>::infinity();
    }
    for (std::size_t q = 1; q <= 4; ++q) {
        std::size_t plen = len * q / 4;
        double m = 0.0;
        for (std::size_t k = 0; k < plen; ++k) m = std::max(m, std::fabs(delta[k]));
        r.delta_sup_prefixes.emplace_back(plen, m);
    }

    std::vector<int> Ns(static_cast<std::size_t>(N_max));
    for (int N = 1; N <= N_max; ++N) Ns[N - 1] = N;
    r.per_N = window_profile(delta, Ns, r.boundary_cut);
    r.avg_dev = std::numeric_limits<double>::infinity();
    for (const auto& e : r.per_N) {
        if (e.sup_avg < r.avg_dev) {
            r.avg_dev = e.sup_avg;
            r.best_N = e.N;
        }
    }
    r.margin = r.threshold - r.avg_dev;
    if (std::fabs(r.margin) <= kThresholdTolerance) r.margin = 0.0;

    if (!sep.separated) {
        r.verdict = Verdict::fail_separation;
    } else if (!std::isfinite(r.delta_sup)) {
        r.verdict = Verdict::fail_bounded;
    } else if (!(r.margin > 0.0)) {
        r.verdict = Verdict::fail_window;
    } else {
        r.verdict = Verdict::pass;
    }
    return r;
}

CriterionReport check_ci_finfty(const PointSeq& seq, double alpha, int N_max, std::size_t drop) {
    return check_riesz_f2(remove_index(seq, drop), alpha, N_max);
}

}  // namespace focklab
