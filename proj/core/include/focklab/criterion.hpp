#pragma once

#include <string>
#include <utility>
#include <vector>

#include "focklab/points.hpp"

namespace focklab {

enum class Verdict { pass, fail_separation, fail_bounded, fail_window };
std::string to_string(Verdict v);

struct WindowEntry {
    int N = 0;
    double sup_avg = 0.0;
    std::size_t argmax = 0;  // first index of the worst window
};

struct CriterionReport {
    Verdict verdict = Verdict::pass;
    double threshold = 0.0;
    double d_min = 0.0;
    std::size_t sep_i = 0;
    std::size_t sep_j = 0;
    double delta_sup = 0.0;
    bool delta_sup_is_surrogate = true;
    std::vector<std::pair<std::size_t, double>> delta_sup_prefixes;
    int best_N = 0;
    double avg_dev = 0.0;
    double margin = 0.0;
    std::size_t boundary_cut = 0;
    std::vector<WindowEntry> per_N;
};

inline constexpr double kThresholdTolerance = 1e-9;

CriterionReport check_riesz_f2(const PointSeq& seq, double alpha, int N_max = 64);

// Drops one point, re-indexes, then applies the F^2 test.
CriterionReport check_ci_finfty(const PointSeq& seq, double alpha, int N_max, std::size_t drop);

// sup over admissible n of |sum_{k=n}^{n+N-1} delta_k| / N, windows inside [cut, len - cut).
std::vector<WindowEntry> window_profile(const std::vector<double>& delta, const std::vector<int>& Ns, std::size_t cut);
std::vector<WindowEntry> window_profile(const PointSeq& seq, double alpha, const std::vector<int>& Ns);

}  // namespace focklab
