// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "qcp/gram_spectrum.hpp"
#include "qcp/online_strategies.hpp"

namespace {

const qcp::Overlap kOverlap = qcp::Overlap::from_c2(0.5);

void BM_SolveSpectrumSerial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qcp::serial::solve_spectrum(n, kOverlap));
}

void BM_SolveSpectrumParallel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qcp::solve_spectrum(n, kOverlap));
}

void BM_SqrtGramSerial(benchmark::State& state) {
    auto spec = qcp::solve_spectrum(static_cast<int>(state.range(0)), kOverlap);
    for (auto _ : state) benchmark::DoNotOptimize(qcp::serial::sqrt_gram(spec));
}

void BM_SqrtGramParallel(benchmark::State& state) {
    auto spec = qcp::solve_spectrum(static_cast<int>(state.range(0)), kOverlap);
    for (auto _ : state) benchmark::DoNotOptimize(qcp::sqrt_gram(spec));
}

void BM_GreedyMonteCarloSerial(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(qcp::serial::monte_carlo(qcp::Strategy::greedy, 50, kOverlap, state.range(0), 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GreedyMonteCarloParallel(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(qcp::monte_carlo(qcp::Strategy::greedy, 50, kOverlap, state.range(0), 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SolveSpectrumSerial)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(BM_SolveSpectrumParallel)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(BM_SqrtGramSerial)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(BM_SqrtGramParallel)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(BM_GreedyMonteCarloSerial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GreedyMonteCarloParallel)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
