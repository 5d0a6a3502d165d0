#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "focklab/kernel.hpp"
#include "focklab/numerics.hpp"
#include "focklab/sequences.hpp"
#include "oracles.hpp"

using namespace focklab;

namespace {

// tests/oracles/baselines.py, moments by direct quadrature
const std::vector<std::pair<int, double>> kLogC{{0, 3.435058780879796},   {1, 6.410486485126142},
                                               {5, 38.410242009334048},  {20, 443.410242009334070},
                                               {60, 3723.410242009334070}, {150, 22803.410242009333160}};

}  // namespace

TEST(Moments, MatchQuadratureOracle) {
    KernelTable tab = moments(0.5, 160);
    for (auto [n, v] : kLogC) EXPECT_NEAR(tab.logc[n], v, 1e-13 * v) << n;
}

TEST(Moments, FirstMomentFromLibraryQuadrature) {
    double integral = adaptive_quadrature([](double t) { return std::exp(2 * t - t * t); }, 0.0, INFINITY, 1e-13).value;
    EXPECT_NEAR(log_moment(0.5, 0), std::log(2 * kPi * (0.5 + integral)), 1e-13);
}

TEST(Moments, GeneralAlphaAgainstSimpson) {
    for (double a : {0.2, 1.7}) {
        for (int n : {0, 3, 9}) {
            auto f = [&](double t) { return std::exp((2.0 * n + 2.0) * t - 2 * a * t * t - (n + 1) * (n + 1) / (2 * a)); };
            double hi = (n + 1) / (2 * a) + 12 / std::sqrt(a);
            double want = std::log(2 * kPi) +
                          log_sum_exp({-std::log(2.0 * n + 2.0), std::log(oracle::simpson(f, 0.0, hi, 40000)) +
                                                                      (n + 1) * (n + 1) / (2 * a)});
            EXPECT_NEAR(log_moment(a, n), want, 1e-9 * std::fabs(want)) << a << " " << n;
        }
    }
}

TEST(Moments, ConvexityAndGrowthLaw) {
    KernelTable tab = moments(0.5, 220);
    for (int n = 5; n + 2 <= 220; ++n) EXPECT_GT(tab.logc[n + 2] - tab.logc[n + 1], tab.logc[n + 1] - tab.logc[n]);
    double ratio = tab.logc[200] * 2 * 0.5 / (201.0 * 201.0);
    EXPECT_NEAR(ratio, 1.0, 0.05);
}

TEST(KernelValue, OriginAndDirectSeries) {
    KernelTable tab = moments(0.5, 80);
    LogComplex k0 = kernel_value(tab, LogPoint::origin(), LogPoint::origin());
    EXPECT_NEAR(k0.logmag, -tab.logc[0], 1e-15);
    EXPECT_NEAR(kernel_value(tab, LogPoint::origin(), {3.0, 1.0}).logmag, -tab.logc[0], 1e-15);
    // oracle: sum of 1/c_n with quadrature moments
    EXPECT_NEAR(std::exp(kernel_value(tab, {0.0, 0.0}, {0.0, 0.0}).logmag), 3.387883197213547e-02, 1e-12 * 3.39e-2);

    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        LogPoint z{rng.uniform(-2, 4), rng.uniform(-kPi, kPi)}, w{rng.uniform(-2, 4), rng.uniform(-kPi, kPi)};
        std::complex<long double> s = 0;
        for (int n = 0; n <= 80; ++n)
            s += std::exp(static_cast<long double>(n * (z.t + w.t) - tab.logc[n])) *
                 std::polar(1.0L, static_cast<long double>(n * (z.theta - w.theta)));
        std::complex<double> want(static_cast<double>(s.real()), static_cast<double>(s.imag()));
        EXPECT_LE(std::abs(kernel_value(tab, z, w).to_complex() - want), 1e-12 * std::abs(want));
    }
}

TEST(KernelValue, HermitianAndPositiveDefinite) {
    KernelTable tab = moments(0.5, 200);
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        LogPoint z{rng.uniform(-3, 30), rng.uniform(-kPi, kPi)}, w{rng.uniform(-3, 30), rng.uniform(-kPi, kPi)};
        LogComplex a = kernel_value(tab, z, w), b = kernel_value(tab, w, z);
        EXPECT_NEAR(a.logmag, b.logmag, 1e-12 * std::max(1.0, std::fabs(a.logmag)));
        EXPECT_NEAR(wrap_phase(a.phase + b.phase), 0.0, 1e-9);
    }
    std::vector<LogPoint> pts;
    for (int i = 0; i < 5; ++i) pts.push_back({rng.uniform(0, 3), rng.uniform(-kPi, kPi)});
    Eigen::MatrixXcd g(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) g(i, j) = kernel_value(tab, pts[i], pts[j]).to_complex();
    g = 0.5 * (g + g.adjoint()).eval();
    EXPECT_GT(hermitian_extremes(g).min, 0.0);
}

TEST(KernelValue, TableTooShortThrows) {
    KernelTable tab = moments(0.5, 20);
    EXPECT_THROW(kernel_value(tab, {40.0, 0.0}, {40.0, 0.0}), std::out_of_range);
    EXPECT_NO_THROW(kernel_value(moments(0.5, table_size_for(0.5, 40.0)), {40.0, 0.0}, {40.0, 0.0}));
}

TEST(KernelBand, MatchesOracleAndIsMonotone) {
    KernelTable tab = moments(0.5, table_size_for(0.5, 20.0));
    std::vector<double> ts;
    for (int i = 0; i <= 400; ++i) ts.push_back(0.05 * i);
    RatioBand b = kernel_estimate_audit(tab, ts);
    // tests/oracles/kernel_band.py
    EXPECT_NEAR(b.lo, 0.0677576639443, 1e-10);
    EXPECT_NEAR(b.hi, 0.159860147536, 1e-10);
    EXPECT_LE(b.spread(), 10.0);
    std::vector<double> coarse;
    for (int i = 0; i <= 40; ++i) coarse.push_back(0.5 * i);
    EXPECT_LE(kernel_estimate_audit(tab, coarse).spread(), 10.0);
    double prev = kNegInf;
    for (double t : ts) {
        double v = log_kernel_diag(tab, {t, 0.3});
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(DiscreteNorm, Examples) {
    KernelTable tab = moments(0.5, 200);
    PointSeq g = reference_gamma(0.5, 40);
    std::vector<LogComplex> zeros(g.size(), LogComplex::zero());
    EXPECT_EQ(log_discrete_norm2(tab, g, zeros), kNegInf);

    LogPoint w{2.5, 0.7};
    PointSeq single({w});
    EXPECT_NEAR(log_discrete_norm2(tab, single, {kernel_value(tab, w, w)}), log_kernel_diag(tab, w), 1e-13);

    for (int m : {0, 3, 11}) {
        std::vector<LogComplex> f;
        double brute = 0.0;
        for (const auto& p : g) {
            f.push_back(LogComplex::polar(m * p.t, m * p.theta));
            brute += std::exp(2 * m * p.t - log_kernel_diag(tab, p) - 2 * m * 20.0);
        }
        EXPECT_NEAR(log_discrete_norm2(tab, g, f), std::log(brute) + 2 * m * 20.0, 1e-12 * (1 + 2 * m * 20.0));
    }
}

TEST(DiscreteNorm, MonomialBandOnReference) {
    KernelTable tab = moments(0.5, table_size_for(0.5, 90.0));
    PointSeq g = reference_gamma(0.5, 79);
    std::vector<double> logs;
    for (int m = 0; m <= 15; ++m) {
        std::vector<LogComplex> f;
        for (const auto& p : g) f.push_back(LogComplex::polar(m * p.t, 0.0));
        logs.push_back(log_discrete_norm2(tab, g, f) - tab.logc[m]);
    }
    RatioBand b = band_from_logs(logs);
    EXPECT_LE(b.spread(), 10.0);
    // tests/oracles/baselines.py monomial sampling, full column
    EXPECT_NEAR(std::exp(logs[0]), 0.9321766133, 1e-9);
    EXPECT_NEAR(std::exp(logs[1]), 1.0609979788, 1e-9);
    EXPECT_NEAR(std::exp(logs[15]), 1.0, 1e-9);
}

TEST(KernelValue, ExpansionCoefficients) {
    KernelTable tab = moments(0.5, 60);
    LogPoint z{0.4, 1.1};
    // k_z(w) = sum conj(z)^n w^n / c_n: recover coefficients from samples on a circle
    int n_theta = 256;
    for (int n : {0, 1, 4, 9}) {
        std::complex<double> acc = 0;
        for (int k = 0; k < n_theta; ++k) {
            double th = 2 * kPi * k / n_theta;
            acc += kernel_value(tab, {0.0, th}, z).to_complex() * std::polar(1.0, -n * th);
        }
        acc /= static_cast<double>(n_theta);
        std::complex<double> want = std::polar(std::exp(n * z.t - tab.logc[n]), -n * z.theta);
        EXPECT_LE(std::abs(acc - want), 1e-12 * std::abs(want) + 1e-16) << n;
    }
}

TEST(MomentCache, PersistsAndRecovers) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "focklab_cache_test";
    fs::remove_all(dir);
    KernelTable fresh = moments(0.5, 50);
    KernelTable first = moments_cached(0.5, 50, dir);
    fs::path file = moment_cache_file(dir, 0.5, 50);
    ASSERT_TRUE(fs::exists(file));
    KernelTable second = moments_cached(0.5, 50, dir);
    ASSERT_EQ(second.logc.size(), fresh.logc.size());
    for (std::size_t n = 0; n < fresh.logc.size(); ++n) {
        EXPECT_EQ(first.logc[n], fresh.logc[n]);
        EXPECT_EQ(second.logc[n], fresh.logc[n]);
    }
    std::ofstream(file) << "{ not json";
    KernelTable healed = moments_cached(0.5, 50, dir);
    EXPECT_EQ(healed.logc, fresh.logc);
    std::ofstream(file) << R"({"alpha": 0.5, "logc": [1, 2], "version": 999})";
    EXPECT_EQ(moments_cached(0.5, 50, dir).logc, fresh.logc);
    fs::remove_all(dir);
    EXPECT_EQ(moments_cached(0.5, 10, "/proc/definitely/not/writable").logc, moments(0.5, 10).logc);
}
