#include "focklab/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "focklab/density.hpp"
#include "focklab/sequences.hpp"
#include "focklab/weights.hpp"

namespace focklab {

namespace {

struct Annuli {
    double u;
    int M;
    double lo(int m) const { return u * (M * m + 0.5); }
    double hi(int m) const { return u * (M * (m + 1) + 0.5); }
    int of(double t) const {
        if (t < lo(0)) return 0;
        return static_cast<int>(std::floor((t / u - 0.5) / M));
    }
    double slot_sum(long first, long count) const {
        // sum of (n+1) u over n = first .. first+count-1
        double a = static_cast<double>(first + 1), b = static_cast<double>(first + count);
        return u * 0.5 * (a + b) * static_cast<double>(count);
    }
};

void validate(const CompletionParams& p) {
    if (p.M < 1) throw std::invalid_argument("M must be positive");
    if (p.N < 2) throw std::invalid_argument("N must be at least 2");
    if (!(p.eta >= kEtaFloor)) throw std::invalid_argument("eta below the search floor");
    if (p.min_groups < 1) throw std::invalid_argument("min_groups must be positive");
}

std::optional<DensityReport> estimate_density(const PointSeq& seq, double u) {
    if (seq.size() < 2) return std::nullopt;
    std::size_t first = 0;
    while (first < seq.size() && seq[first].is_origin()) ++first;
    if (first >= seq.size()) return std::nullopt;
    double span = seq[seq.size() - 1].t - seq[first].t;
    if (span < 8.0 * u) return std::nullopt;
    std::vector<double> offsets;
    for (double x = seq[first].t; x <= seq[seq.size() - 1].t; x += 0.5 * u) offsets.push_back(x);
    return densities(seq, {span / 4.0, span / 2.0}, offsets);
}

std::string config_string(const std::vector<int>& c, int from, int to) {
    std::ostringstream os;
    for (int m = from; m < to; ++m) os << (m > from ? ";" : "") << c[m];
    return os.str();
}

struct Gap {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    double center() const { return 0.5 * (lo + hi); }
    double position(int j, int c) const { return lo + (j + 1) * width() / (c + 1); }
};

std::vector<double> group_sums_of(const PointSeq& seq, double alpha, int groups, long per_group) {
    std::vector<double> delta = decompose(alpha, seq);
    std::vector<double> sums;
    for (int g = 0; g < groups; ++g) {
        double s = 0.0;
        for (long n = g * per_group; n < (g + 1) * per_group; ++n) s += delta[static_cast<std::size_t>(n)];
        sums.push_back(s);
    }
    return sums;
}

double spread_offset(const Weight& w, const std::vector<double>& ts, const std::vector<LogPoint>& neighbors) {
    if (neighbors.empty() || ts.empty()) return 0.0;
    const int candidates = 64;
    double best_phi = 0.0, best = -1.0;
    int c = static_cast<int>(ts.size());
    for (int q = 0; q < candidates; ++q) {
        double phi0 = 2.0 * kPi * q / candidates;
        double worst = std::numeric_limits<double>::infinity();
        for (int j = 0; j < c; ++j) {
            LogPoint z{ts[j], phi0 + 2.0 * kPi * j / c};
            for (const auto& p : neighbors) worst = std::min(worst, d_rho(w, z, p));
        }
        if (worst > best) {
            best = worst;
            best_phi = phi0;
        }
    }
    return best_phi;
}

}  // namespace

CompletionResult complete_to_ci(const PointSeq& seq, double alpha, const CompletionParams& p) {
    validate(p);
    Weight w(alpha);
    const double u = 1.0 / (2.0 * alpha);
    Annuli an{u, p.M};
    if (!is_separated(w, seq).separated) throw std::invalid_argument("input sequence is not separated");
    if (auto d = estimate_density(seq, u); d && d->d_plus >= 2.0 * alpha - 1e-12)
        throw std::domain_error("upper density is not below 2 alpha");

    int m_last = seq.empty() ? 0 : an.of(seq[seq.size() - 1].t);
    int groups = std::max(p.min_groups, (m_last + p.N) / p.N);
    int K = groups * p.N;

    std::vector<std::vector<LogPoint>> bucket(K);
    for (const auto& pt : seq) bucket[an.of(pt.t)].push_back(pt);
    for (int m = 0; m < K; ++m) {
        if (static_cast<int>(bucket[m].size()) > p.M - 1) {
            std::ostringstream os;
            os << "annulus " << m << " holds " << bucket[m].size() << " points; M must exceed that count";
            throw std::invalid_argument(os.str());
        }
    }

    std::vector<Gap> gap(K);
    for (int m = 0; m < K; ++m) {
        std::vector<double> cuts{an.lo(m)};
        for (const auto& pt : bucket[m])
            if (pt.t > an.lo(m)) cuts.push_back(pt.t);
        cuts.push_back(an.hi(m));
        Gap bestg{cuts[0], cuts[0]};
        for (std::size_t k = 1; k < cuts.size(); ++k)
            if (cuts[k] - cuts[k - 1] > bestg.width()) bestg = {cuts[k - 1], cuts[k]};
        if (bestg.width() < p.eta) {
            std::ostringstream os;
            os << "no empty gap of width " << p.eta << " in annulus " << m;
            throw std::invalid_argument(os.str());
        }
        gap[m] = bestg;
    }

    CompletionResult res;
    res.bound = 2.0 * p.M * u;
    res.groups = groups;
    std::vector<int> c(K);
    for (int m = 0; m < K; ++m) c[m] = p.M - static_cast<int>(bucket[m].size());

    const long per_group = static_cast<long>(p.N) * p.M;
    for (int g = 0; g < groups; ++g) {
        int m0 = g * p.N, m1 = m0 + p.N;
        double S = -an.slot_sum(g * per_group, per_group);
        for (int m = m0; m < m1; ++m) {
            for (const auto& pt : bucket[m]) S += pt.t;
            S += c[m] * gap[m].center();
        }
        int step = 0;
        res.trace.push_back({g, step, config_string(c, m0, m1), S});
        while (std::fabs(S) > res.bound) {
            bool moved = false;
            if (S < 0.0) {
                for (int m = m1 - 2; m >= m0 && std::fabs(S) > res.bound; --m) {
                    if (c[m] == 0) continue;
                    --c[m];
                    ++c[m + 1];
                    S += gap[m + 1].center() - gap[m].center();
                    res.trace.push_back({g, ++step, config_string(c, m0, m1), S});
                    moved = true;
                }
            } else {
                for (int m = m0 + 1; m < m1 && std::fabs(S) > res.bound; ++m) {
                    if (c[m] == 0) continue;
                    --c[m];
                    ++c[m - 1];
                    S -= gap[m].center() - gap[m - 1].center();
                    res.trace.push_back({g, ++step, config_string(c, m0, m1), S});
                    moved = true;
                }
            }
            if (!moved) {
                std::ostringstream os;
                os << "group " << g << " cannot be balanced; increase N";
                throw std::runtime_error(os.str());
            }
        }
    }

    std::vector<LogPoint> added;
    for (int m = 0; m < K; ++m) {
        if (c[m] == 0) continue;
        std::vector<double> ts;
        for (int j = 0; j < c[m]; ++j) ts.push_back(gap[m].position(j, c[m]));
        std::vector<LogPoint> neighbors;
        for (int q = std::max(0, m - 1); q <= std::min(K - 1, m + 1); ++q)
            neighbors.insert(neighbors.end(), bucket[q].begin(), bucket[q].end());
        for (const auto& a : added)
            if (a.t >= an.lo(std::max(0, m - 1))) neighbors.push_back(a);
        double phi0 = spread_offset(w, ts, neighbors);
        for (int j = 0; j < c[m]; ++j) added.push_back({ts[j], phi0 + 2.0 * kPi * j / c[m]});
    }

    PointSeq addseq(added, "added");
    res.sequence = merge(seq, addseq);
    res.sequence.set_meta("completed(" + seq.meta() + ")");
    res.changed = addseq;
    if (res.sequence.size() != static_cast<std::size_t>(K) * p.M) throw std::logic_error("completion count mismatch");
    res.group_sums = group_sums_of(res.sequence, alpha, groups, per_group);
    for (double s : res.group_sums)
        if (std::fabs(s) > res.bound * (1.0 + 1e-12)) throw std::logic_error("completion group sum exceeds its bound");
    res.min_separation = is_separated(w, res.sequence).d_min;
    return res;
}

namespace {

// Chooses k of the sorted points to match k evenly spaced targets in [lo, hi).
std::vector<bool> select_spread(const std::vector<LogPoint>& pts, int k, double lo, double hi) {
    int L = static_cast<int>(pts.size());
    std::vector<bool> keep(L, false);
    if (k <= 0) return keep;
    std::vector<double> target(k);
    for (int j = 0; j < k; ++j) target[j] = lo + (j + 0.5) * (hi - lo) / k;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> cost(L + 1, std::vector<double>(k + 1, inf));
    for (int i = 0; i <= L; ++i) cost[i][0] = 0.0;
    for (int i = 1; i <= L; ++i)
        for (int j = 1; j <= std::min(i, k); ++j)
            cost[i][j] = std::min(cost[i - 1][j], cost[i - 1][j - 1] + std::fabs(pts[i - 1].t - target[j - 1]));
    int i = L, j = k;
    while (j > 0) {
        if (cost[i][j] == cost[i - 1][j]) {
            --i;
        } else {
            keep[i - 1] = true;
            --i;
            --j;
        }
    }
    return keep;
}

}  // namespace

CompletionResult thin_to_ci(const PointSeq& seq, double alpha, const CompletionParams& p) {
    validate(p);
    if (p.N < 3 * p.M) throw std::invalid_argument("thinning requires N >= 3M");
    Weight w(alpha);
    const double u = 1.0 / (2.0 * alpha);
    Annuli an{u, p.M};
    if (seq.empty()) throw std::invalid_argument("empty sequence cannot be thinned");
    auto d = estimate_density(seq, u);
    if (!d || d->d_minus <= 2.0 * alpha + 1e-12) throw std::domain_error("lower density is not above 2 alpha");

    double t_last = seq[seq.size() - 1].t;
    int K_avail = 0;
    while (an.hi(K_avail) <= t_last) ++K_avail;
    int groups = K_avail / p.N;
    if (groups < 1) throw std::invalid_argument("sequence too short for one group of annuli");
    int K = groups * p.N;

    std::vector<std::vector<LogPoint>> bucket(K);
    std::vector<LogPoint> outside;
    for (const auto& pt : seq) {
        int m = an.of(pt.t);
        if (m < K) {
            bucket[m].push_back(pt);
        } else {
            outside.push_back(pt);
        }
    }
    for (int m = 0; m < K; ++m) {
        if (static_cast<int>(bucket[m].size()) < p.M + 1) {
            std::ostringstream os;
            os << "annulus " << m << " holds " << bucket[m].size() << " points; at least M+1 are required";
            throw std::invalid_argument(os.str());
        }
    }

    std::vector<std::vector<bool>> keep(K);
    for (int m = 0; m < K; ++m) keep[m] = select_spread(bucket[m], p.M, an.lo(m), an.hi(m));
    auto counts = [&]() {
        std::vector<int> c(K);
        for (int m = 0; m < K; ++m) c[m] = static_cast<int>(std::count(keep[m].begin(), keep[m].end(), true));
        return c;
    };
    auto first_index = [&](int m, bool kept, bool lowest) -> int {
        int L = static_cast<int>(keep[m].size());
        if (lowest) {
            for (int i = 0; i < L; ++i)
                if (keep[m][i] == kept) return i;
        } else {
            for (int i = L - 1; i >= 0; --i)
                if (keep[m][i] == kept) return i;
        }
        return -1;
    };

    CompletionResult res;
    res.bound = 4.0 * p.M * u;
    res.groups = groups;
    const long per_group = static_cast<long>(p.N) * p.M;
    for (int g = 0; g < groups; ++g) {
        int m0 = g * p.N, m1 = m0 + p.N;
        double S = -an.slot_sum(g * per_group, per_group);
        for (int m = m0; m < m1; ++m)
            for (std::size_t i = 0; i < bucket[m].size(); ++i)
                if (keep[m][i]) S += bucket[m][i].t;
        int step = 0;
        res.trace.push_back({g, step, config_string(counts(), m0, m1), S});
        while (std::fabs(S) > res.bound) {
            bool moved = false;
            if (S < 0.0) {
                for (int m = m1 - 2; m >= m0 && std::fabs(S) > res.bound; --m) {
                    int r = first_index(m, true, true), a = first_index(m + 1, false, true);
                    if (r < 0 || a < 0) continue;
                    keep[m][r] = false;
                    keep[m + 1][a] = true;
                    S += bucket[m + 1][a].t - bucket[m][r].t;
                    res.trace.push_back({g, ++step, config_string(counts(), m0, m1), S});
                    moved = true;
                }
            } else {
                for (int m = m0 + 1; m < m1 && std::fabs(S) > res.bound; ++m) {
                    int r = first_index(m, true, false), a = first_index(m - 1, false, false);
                    if (r < 0 || a < 0) continue;
                    keep[m][r] = false;
                    keep[m - 1][a] = true;
                    S += bucket[m - 1][a].t - bucket[m][r].t;
                    res.trace.push_back({g, ++step, config_string(counts(), m0, m1), S});
                    moved = true;
                }
            }
            if (!moved) {
                std::ostringstream os;
                os << "group " << g << " cannot be balanced; increase N";
                throw std::runtime_error(os.str());
            }
        }
    }

    std::vector<LogPoint> kept, removed(outside);
    for (int m = 0; m < K; ++m)
        for (std::size_t i = 0; i < bucket[m].size(); ++i) (keep[m][i] ? kept : removed).push_back(bucket[m][i]);
    res.sequence = PointSeq(kept, "thinned(" + seq.meta() + ")");
    res.changed = PointSeq(removed, "removed");
    if (res.sequence.size() != static_cast<std::size_t>(K) * p.M) throw std::logic_error("thinning count mismatch");
    res.group_sums = group_sums_of(res.sequence, alpha, groups, per_group);
    for (double s : res.group_sums)
        if (std::fabs(s) > res.bound * (1.0 + 1e-12)) throw std::logic_error("thinning group sum exceeds its bound");
    res.min_separation = is_separated(w, res.sequence).d_min;
    return res;
}

}  // namespace focklab
