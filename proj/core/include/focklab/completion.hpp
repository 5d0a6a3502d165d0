#pragma once

#include <string>
#include <vector>

#include "focklab/points.hpp"

namespace focklab {

struct CompletionParams {
    int M = 4;
    int N = 16;
    double eta = 0.05;
    int min_groups = 4;
};

inline constexpr double kEtaFloor = 0.01;

struct WalkStep {
    int group = 0;
    int step = 0;
    std::string configuration;
    double group_sum = 0.0;
};

struct CompletionResult {
    PointSeq sequence;   // augmented or kept
    PointSeq changed;    // added or removed points
    std::vector<double> group_sums;
    double bound = 0.0;  // C M / (2 alpha)
    int groups = 0;
    double min_separation = 0.0;
    std::vector<WalkStep> trace;
};

// Adds points to a sequence of upper density below 2 alpha.
CompletionResult complete_to_ci(const PointSeq& seq, double alpha, const CompletionParams& params = {});

// Removes points from a sequence of lower density above 2 alpha.
CompletionResult thin_to_ci(const PointSeq& seq, double alpha, const CompletionParams& params = {});

}  // namespace focklab
