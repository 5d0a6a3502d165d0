#include <gtest/gtest.h>

#include <cmath>

#include "focklab/criterion.hpp"
#include "focklab/sequences.hpp"
#include "oracles.hpp"

using namespace focklab;

namespace {

double brute_sup(const std::vector<double>& d, int N, std::size_t cut) {
    double best = 0;
    for (std::size_t s = cut; s + N + cut <= d.size(); ++s) {
        double sum = 0;
        for (int k = 0; k < N; ++k) sum += d[s + k];
        best = std::max(best, std::fabs(sum) / N);
    }
    return best;
}

}  // namespace

TEST(WindowProfile, MatchesBruteForce) {
    Rng rng(21);
    std::vector<double> d;
    for (int i = 0; i < 300; ++i) d.push_back(rng.uniform(-0.7, 0.7));
    std::vector<int> Ns{1, 2, 5, 17, 40};
    auto prof = window_profile(d, Ns, 40);
    ASSERT_EQ(prof.size(), Ns.size());
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        EXPECT_NEAR(prof[i].sup_avg, brute_sup(d, Ns[i], 40), 1e-14);
        EXPECT_GE(prof[i].argmax, 40u);
        EXPECT_LE(prof[i].argmax + Ns[i] + 40, d.size());
    }
    EXPECT_THROW(window_profile(d, {0}, 10), std::invalid_argument);
    EXPECT_THROW(window_profile(d, {250}, 40), std::invalid_argument);
}

TEST(WindowProfile, BoundaryIsExcluded) {
    std::vector<double> d(200, 0.0);
    for (int k = 0; k < 10; ++k) d[k] = d[199 - k] = 5.0;
    auto prof = window_profile(d, {1, 8}, 10);
    EXPECT_EQ(prof[0].sup_avg, 0.0);
    EXPECT_EQ(prof[1].sup_avg, 0.0);
    EXPECT_GT(window_profile(d, {1}, 9)[0].sup_avg, 0.0);
}

TEST(Criterion, ReferenceSequencePasses) {
    for (double a : {0.5, 1.3}) {
        CriterionReport r = check_riesz_f2(reference_gamma(a, 399), a, 64);
        EXPECT_EQ(r.verdict, Verdict::pass);
        EXPECT_DOUBLE_EQ(r.threshold, 1 / (4 * a));
        EXPECT_EQ(r.delta_sup, 0.0);
        EXPECT_NEAR(r.margin, 1 / (4 * a), 1e-15);
        EXPECT_EQ(r.boundary_cut, 64u);
        EXPECT_EQ(r.per_N.size(), 64u);
        EXPECT_NEAR(r.d_min, oracle::min_pair_d_rho(a, reference_gamma(a, 399)), 1e-12);
    }
}

TEST(Criterion, ConstantShifts) {
    CriterionReport inside = check_riesz_f2(gallery("constant_shift", 0.5, 399, {{"d", 0.3}}), 0.5, 64);
    EXPECT_EQ(inside.verdict, Verdict::pass);
    EXPECT_NEAR(inside.avg_dev, 0.3, 1e-12);
    EXPECT_NEAR(inside.margin, 0.2, 1e-12);
    for (double d : {0.5, -0.5}) {
        CriterionReport edge = check_riesz_f2(gallery("constant_shift", 0.5, 399, {{"d", d}}), 0.5, 64);
        EXPECT_EQ(edge.verdict, Verdict::fail_window) << d;
        EXPECT_EQ(edge.margin, 0.0);
    }
    EXPECT_EQ(check_riesz_f2(gallery("constant_shift", 0.5, 399, {{"d", 0.7}}), 0.5, 64).verdict,
              Verdict::fail_window);
}

TEST(Criterion, CriticalExamplesFailOnTheWindowCondition) {
    CriterionReport c = check_riesz_f2(gallery("critical_shift", 0.5, 399), 0.5, 64);
    EXPECT_EQ(c.verdict, Verdict::fail_window);
    EXPECT_NEAR(c.avg_dev, 0.5, 1e-12);
    CriterionReport two = check_riesz_f2(gallery("two_sided", 0.5, 199), 0.5, 64);
    EXPECT_EQ(two.verdict, Verdict::fail_window);
    EXPECT_EQ(two.best_N % 2, 0);
    EXPECT_NEAR(two.avg_dev, 0.5, 1e-12);
    CriterionReport g2 = check_riesz_f2(gallery("gamma2", 0.5, 199), 0.5, 64);
    EXPECT_EQ(g2.verdict, Verdict::fail_window);
    EXPECT_NEAR(g2.avg_dev, 1.5, 1e-12);
}

TEST(Criterion, BlockPatternPassesWithLongWindows) {
    CriterionReport r = check_riesz_f2(gallery("avdonin_blocks", 0.5, 399, {{"amplitude", 0.6}, {"block", 8}}), 0.5, 64);
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_NEAR(r.delta_sup, 0.6, 1e-12);
    EXPECT_GE(r.best_N, 16);
    EXPECT_EQ(r.best_N % 16, 0);
    EXPECT_GT(r.per_N[0].sup_avg, r.threshold);
}

TEST(Criterion, SeparationFailure) {
    PointSeq g = reference_gamma(0.5, 399);
    CriterionReport r = check_riesz_f2(insert_point(g, g[100]), 0.5, 64);
    EXPECT_EQ(r.verdict, Verdict::fail_separation);
    EXPECT_EQ(r.d_min, 0.0);
    EXPECT_EQ(std::min(r.sep_i, r.sep_j), 100u);

    CriterionReport near = check_riesz_f2(insert_point(g, {g[100].t + 1e-6, 0.0}), 0.5, 64);
    EXPECT_NEAR(near.d_min, 1e-6, 1e-9);
    EXPECT_EQ(std::min(near.sep_i, near.sep_j), 100u);
    EXPECT_NE(near.verdict, Verdict::pass);
}

TEST(Criterion, PrefixSupsAreMonotone) {
    PointSeq s = gallery("avdonin_blocks", 0.5, 399, {{"amplitude", 0.3}, {"block", 4}});
    CriterionReport r = check_riesz_f2(s, 0.5, 64);
    ASSERT_EQ(r.delta_sup_prefixes.size(), 4u);
    EXPECT_EQ(r.delta_sup_prefixes.back().first, s.size());
    for (std::size_t q = 1; q < 4; ++q) EXPECT_GE(r.delta_sup_prefixes[q].second, r.delta_sup_prefixes[q - 1].second);
}

TEST(Criterion, InputValidation) {
    EXPECT_THROW(check_riesz_f2(reference_gamma(0.5, 99), 0.5, 64), std::invalid_argument);
    EXPECT_THROW(check_riesz_f2(reference_gamma(0.5, 99), 0.5, 0), std::invalid_argument);
    EXPECT_NO_THROW(check_riesz_f2(reference_gamma(0.5, 255), 0.5, 64));
}

TEST(CriterionFinfty, DropChoice) {
    PointSeq g = reference_gamma(0.5, 399);
    // dropping the first node shifts every remaining index by one: delta' = 1/(2 alpha)
    CriterionReport r = check_ci_finfty(g, 0.5, 64, 0);
    EXPECT_EQ(r.verdict, Verdict::fail_window);
    EXPECT_NEAR(r.avg_dev, 1.0, 1e-12);
    CriterionReport plus = check_ci_finfty(merge(g, PointSeq({LogPoint::origin()})), 0.5, 64, 0);
    EXPECT_EQ(plus.verdict, Verdict::pass);
    EXPECT_EQ(plus.delta_sup, 0.0);
    CriterionReport extra = check_ci_finfty(merge(g, PointSeq({{0.0, 0.0}})), 0.5, 64, 0);
    EXPECT_EQ(extra.verdict, Verdict::pass);
}

TEST(Verdict, Names) {
    EXPECT_EQ(to_string(Verdict::pass), "pass");
    EXPECT_EQ(to_string(Verdict::fail_separation), "fail_separation");
    EXPECT_EQ(to_string(Verdict::fail_bounded), "fail_bounded");
    EXPECT_EQ(to_string(Verdict::fail_window), "fail_window");
}
