#include "softcircuit/electromech/percolation.hpp"

#include <benchmark/benchmark.h>

using namespace softcircuit::electromech;

static void BM_SolveConductance(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto net = build_network(n, n, 0.767, DamageModelParams::ag_wpu(), 1);
    for (auto _ : state) benchmark::DoNotOptimize(solve_conductance(net, 0.1));
    state.SetComplexityN(static_cast<benchmark::IterationCount>(n * n));
}
BENCHMARK(BM_SolveConductance)->Arg(16)->Arg(32)->Arg(64)->Arg(128)->Complexity();

static void BM_FindFailureStrain(benchmark::State& state) {
    const auto net = build_network(32, 32, 0.767, DamageModelParams::biphasic(), 1);
    const auto grid = make_strain_grid(10.0, 0.005);
    for (auto _ : state) benchmark::DoNotOptimize(find_failure_strain(net, grid));
}
BENCHMARK(BM_FindFailureStrain);

static void BM_StrainSweep(benchmark::State& state) {
    const auto net = build_network(32, 32, 0.767, DamageModelParams::ag_wpu(), 1);
    const auto grid = make_strain_grid(1.0, 0.005);
    const auto geom = reference::test_trace();
    const SweepOptions opts{static_cast<unsigned>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(strain_sweep(net, geom, grid, 100.0, opts));
}
BENCHMARK(BM_StrainSweep)->Arg(1)->Arg(2)->UseRealTime();
