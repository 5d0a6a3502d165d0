#pragma once

#include <optional>
#include <vector>

#include "focklab/points.hpp"

namespace focklab {

// Points with t in [t_lo, t_hi).
int annulus_count(const PointSeq& seq, double t_lo, double t_hi);

struct DensityReport {
    double d_minus = 0.0;
    double d_plus = 0.0;
    double tolerance = 0.0;
    std::vector<double> logR;
    std::vector<double> offsets;
    // counts[i][j] for annulus [offsets[j], offsets[j] + logR[i]); empty when not fully inside the stored range
    std::vector<std::vector<std::optional<int>>> counts;
};

DensityReport densities(const PointSeq& seq, const std::vector<double>& logR, const std::vector<double>& offsets);
std::vector<double> default_offsets(const PointSeq& seq, double step);

// min over log R of Card{t < log R} / log R
double disk_density(const PointSeq& seq, const std::vector<double>& logR);

struct SlackReport {
    double min_slack = 0.0;
    std::size_t argmin = 0;
    std::vector<double> slack;
};

// Card(S in A(delta x, R x / delta)) - (1 - delta^2) Card(Lambda in A(x, R x)) over x = e^{logx}.
SlackReport rs_comparison_audit(const PointSeq& interp, const PointSeq& sampl, double delta, double logR,
                                const std::vector<double>& logx);

}  // namespace focklab
