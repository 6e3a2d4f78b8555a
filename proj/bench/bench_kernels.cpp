#include "witnesskit/sweep.hpp"
#include "witnesskit/witness.hpp"

#include <benchmark/benchmark.h>

using namespace witnesskit;

namespace {

Execution mode(const benchmark::State& state)
{
    return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void BM_PreservesProjections(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const HermMap f = ad_symmetry(SymmetryOp(SymmetryKind::unitary, random_haar_unitary(n, 1)));
    for (auto _ : state)
        benchmark::DoNotOptimize(preserves_projections(f, n / 2, 200, 1e-9, 0, mode(state)));
}

void BM_PositivityHeuristic(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const HermMap f = theta_u(SymmetryOp(SymmetryKind::unitary, random_haar_unitary(n, 2)), n / 2);
    PositivityConfig cfg;
    cfg.exec = mode(state);
    for (auto _ : state) benchmark::DoNotOptimize(is_positive_heuristic(f, cfg));
}

void BM_WitnessSweep(benchmark::State& state)
{
    SweepConfig cfg;
    cfg.grid = make_grid(2, static_cast<int>(state.range(0)), KRule::all);
    cfg.trials = 2;
    cfg.exec = mode(state);
    for (auto _ : state) benchmark::DoNotOptimize(witness_sweep(cfg));
}

void BM_UniformMinimality(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(uniform_minimality_check(n, n / 2, 1000, 3, mode(state)));
}

} // namespace

BENCHMARK(BM_PreservesProjections)->ArgsProduct({{4, 6}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PositivityHeuristic)->ArgsProduct({{4, 6}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_WitnessSweep)->ArgsProduct({{4, 5}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_UniformMinimality)->ArgsProduct({{4, 6}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
