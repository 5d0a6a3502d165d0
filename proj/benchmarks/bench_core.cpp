#include <benchmark/benchmark.h>

#include "focklab/debranges.hpp"
#include "focklab/frames.hpp"
#include "focklab/genfun.hpp"
#include "focklab/kernel.hpp"
#include "focklab/numerics.hpp"
#include "focklab/sequences.hpp"

using namespace focklab;

static void BM_LogSum(benchmark::State& st) {
    std::vector<LogComplex> xs;
    Rng rng(1);
    for (int i = 0; i < st.range(0); ++i) xs.push_back(LogComplex::polar(rng.uniform(-50, 50), rng.uniform(-kPi, kPi)));
    for (auto _ : st) benchmark::DoNotOptimize(log_sum(xs));
}
BENCHMARK(BM_LogSum)->Arg(64)->Arg(1024);

static void BM_Moments(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(moments(0.5, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_Moments)->Arg(256);

static void BM_KernelValue(benchmark::State& st) {
    KernelTable tab = moments(0.5, 256);
    LogPoint z{static_cast<double>(st.range(0)), 0.3}, w{static_cast<double>(st.range(0)) + 1.0, -1.1};
    for (auto _ : st) benchmark::DoNotOptimize(kernel_value(tab, z, w));
}
BENCHMARK(BM_KernelValue)->Arg(5)->Arg(40);

static void BM_GenFunEval(benchmark::State& st) {
    GenFun f(reference_gamma(0.5, static_cast<int>(st.range(0))), 0.5);
    LogPoint z{12.3, 0.7};
    for (auto _ : st) benchmark::DoNotOptimize(eval(f, z));
}
BENCHMARK(BM_GenFunEval)->Arg(64)->Arg(512);

static void BM_GramSection(benchmark::State& st) {
    KernelTable tab = moments(0.5, table_size_for(0.5, 140.0));
    PointSeq g = reference_gamma(0.5, 127);
    for (auto _ : st) benchmark::DoNotOptimize(gram_section(tab, g, 0, static_cast<std::size_t>(st.range(0))));
}
BENCHMARK(BM_GramSection)->Arg(16)->Arg(64);

static void BM_HalflineSup(benchmark::State& st) {
    auto polys = random_polynomials(0.5, 1, 30);
    Weight w(0.5);
    for (auto _ : st) benchmark::DoNotOptimize(halfline_sup_ratio(w, polys[0], 0.0, {}));
}
BENCHMARK(BM_HalflineSup);

BENCHMARK_MAIN();
