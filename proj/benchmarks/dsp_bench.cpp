#include "softcircuit/biosignal/classify.hpp"
#include "softcircuit/biosignal/envelope.hpp"
#include "softcircuit/biosignal/filter.hpp"
#include "softcircuit/random.hpp"

#include <benchmark/benchmark.h>

using namespace softcircuit;
using namespace softcircuit::biosignal;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal();
    return x;
}

}  // namespace

static void BM_Dtw(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = noise(n, 1);
    const auto b = noise(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(dtw_distance(a, b));
    state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_Dtw)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

static void BM_FilterChain(benchmark::State& state) {
    const auto chain = design_chain(kEmgBand, 250.0);
    const auto x = noise(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(apply_filter(chain, x));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FilterChain)->Arg(250 * 60);

static void BM_RmsEnvelope(benchmark::State& state) {
    const auto x = noise(250 * 60, 4);
    const auto w = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(rms_envelope(x, w));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}
BENCHMARK(BM_RmsEnvelope)->Arg(kFingerPoseEnvelopeWindow)->Arg(kGripEnvelopeWindow);
