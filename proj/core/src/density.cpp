#include "focklab/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace focklab {

namespace {

bool lower_t(const LogPoint& p, double t) { return p.t < t; }

std::size_t count_below(const PointSeq& seq, double t) {
    auto it = std::lower_bound(seq.begin(), seq.end(), t, lower_t);
    return static_cast<std::size_t>(it - seq.begin());
}

// Largest number of points in any half-open t-window of unit length.
int unit_packing(const PointSeq& seq) {
    int best = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i].is_origin()) continue;
        int c = static_cast<int>(count_below(seq, seq[i].t + 1.0) - count_below(seq, seq[i].t));
        best = std::max(best, c);
    }
    return best;
}

}  // namespace

int annulus_count(const PointSeq& seq, double t_lo, double t_hi) {
    if (t_hi <= t_lo) return 0;
    return static_cast<int>(count_below(seq, t_hi) - count_below(seq, t_lo));
}

std::vector<double> default_offsets(const PointSeq& seq, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("offset step must be positive");
    std::vector<double> out;
    if (seq.empty()) return out;
    double lo = seq[0].is_origin() ? 0.0 : seq[0].t;
    double hi = seq[seq.size() - 1].t;
    for (double x = lo; x <= hi; x += step) out.push_back(x);
    return out;
}

DensityReport densities(const PointSeq& seq, const std::vector<double>& logR, const std::vector<double>& offsets) {
    if (logR.empty() || offsets.empty()) throw std::invalid_argument("empty density grid");
    for (double L : logR)
        if (!(L > 0.0)) throw std::invalid_argument("log R values must be positive");
    if (seq.empty()) throw std::invalid_argument("no admissible annulus: empty sequence");
    DensityReport rep;
    rep.logR = logR;
    rep.offsets = offsets;
    double t_first = seq[0].is_origin() ? kNegInf : seq[0].t;
    double t_last = seq[seq.size() - 1].t;
    rep.d_minus = std::numeric_limits<double>::infinity();
    rep.d_plus = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (double L : logR) {
        std::vector<std::optional<int>> row;
        std::vector<std::pair<double, int>> admissible;
        for (double x : offsets) {
            if (x >= t_first && x + L <= t_last) {
                int c = annulus_count(seq, x, x + L);
                row.emplace_back(c);
                admissible.emplace_back(x, c);
            } else {
                row.emplace_back(std::nullopt);
            }
        }
        rep.counts.push_back(std::move(row));
        if (admissible.empty()) continue;
        std::sort(admissible.begin(), admissible.end());
        std::size_t keep = (admissible.size() + 1) / 2;
        double mn = std::numeric_limits<double>::infinity(), mx = -mn;
        for (std::size_t k = admissible.size() - keep; k < admissible.size(); ++k) {
            double ratio = admissible[k].second / L;
            mn = std::min(mn, ratio);
            mx = std::max(mx, ratio);
        }
        rep.d_minus = std::min(rep.d_minus, mn);
        rep.d_plus = std::max(rep.d_plus, mx);
        any = true;
    }
    if (!any) throw std::invalid_argument("no admissible annulus inside the stored range");
    double Lmin = *std::min_element(logR.begin(), logR.end());
    rep.tolerance = unit_packing(seq) / Lmin;
    return rep;
}

double disk_density(const PointSeq& seq, const std::vector<double>& logR) {
    if (logR.empty()) throw std::invalid_argument("empty density grid");
    if (seq.empty()) return 0.0;
    double t_last = seq[seq.size() - 1].t;
    double best = std::numeric_limits<double>::infinity();
    for (double L : logR) {
        if (!(L > 0.0)) throw std::invalid_argument("log R values must be positive");
        if (L > t_last) continue;
        best = std::min(best, static_cast<double>(count_below(seq, L)) / L);
    }
    if (!std::isfinite(best)) throw std::invalid_argument("no disk radius inside the stored range");
    return best;
}

SlackReport rs_comparison_audit(const PointSeq& interp, const PointSeq& sampl, double delta, double logR,
                                const std::vector<double>& logx) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    if (!(logR > 0.0)) throw std::invalid_argument("log R must be positive");
    if (logx.empty()) throw std::invalid_argument("empty offset list");
    double ld = std::log(delta);
    auto covers = [](const PointSeq& s, double lo, double hi) {
        return !s.empty() && s[0].t <= lo && s[s.size() - 1].t >= hi;
    };
    SlackReport rep;
    rep.min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < logx.size(); ++k) {
        double x = logx[k];
        double s_lo = x + ld, s_hi = x + logR - ld;
        if (!covers(interp, x, x + logR) || !covers(sampl, s_lo, s_hi))
            throw std::invalid_argument("annulus outside the stored range of a sequence");
        double s = annulus_count(sampl, s_lo, s_hi) - (1.0 - delta * delta) * annulus_count(interp, x, x + logR);
        rep.slack.push_back(s);
        if (s < rep.min_slack) {
            rep.min_slack = s;
            rep.argmin = k;
        }
    }
    return rep;
}

}  // namespace focklab
