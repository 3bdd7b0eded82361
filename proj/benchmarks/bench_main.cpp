#include <benchmark/benchmark.h>

#include "solvact/affine/affine.hpp"
#include "solvact/constructions/circle.hpp"
#include "solvact/constructions/flowblock.hpp"
#include "solvact/constructions/rotation.hpp"
#include "solvact/dynamics/audit.hpp"
#include "solvact/exact/smith.hpp"
#include "solvact/spectral/spectral.hpp"

using namespace solvact;
using exact::RationalMatrix;

namespace {

RationalMatrix sl4() { return RationalMatrix::from_rows({{0, 0, 0, -1}, {1, 0, 0, -4}, {0, 1, 0, -4}, {0, 0, 1, -4}}); }

void BM_ClassifySL4(benchmark::State& state) {
    const auto a = sl4();
    for (auto _ : state) benchmark::DoNotOptimize(spectral::classify(a));
}
BENCHMARK(BM_ClassifySL4)->Unit(benchmark::kMillisecond);

void BM_SynthesizeFibonacci(benchmark::State& state) {
    const auto a = RationalMatrix::from_rows({{0, 1}, {1, 1}});
    for (auto _ : state) benchmark::DoNotOptimize(affine::synthesize(a));
}
BENCHMARK(BM_SynthesizeFibonacci)->Unit(benchmark::kMillisecond);

void BM_HomomorphismCheck(benchmark::State& state) {
    const auto rep = affine::synthesize(RationalMatrix::from_rows({{0, 1}, {1, 1}}));
    for (auto _ : state) benchmark::DoNotOptimize(affine::homomorphism_check(rep, state.range(0), 1));
}
BENCHMARK(BM_HomomorphismCheck)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_CompositionHarness(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(dynamics::composition_harness(state.range(0), 7));
}
BENCHMARK(BM_CompositionHarness)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FlowBlockBuild(benchmark::State& state) {
    const auto a = sl4();
    exact::RationalVector t0{1, 0, 0, 0};
    for (auto _ : state)
        benchmark::DoNotOptimize(constructions::flowblock_build(a, constructions::FlowParameter::central(), t0));
}
BENCHMARK(BM_FlowBlockBuild)->Unit(benchmark::kMillisecond);

void BM_FlowBlockEvaluate(benchmark::State& state) {
    const auto fb = constructions::flowblock_build(sl4(), constructions::FlowParameter::central(),
                                                   exact::RationalVector{1, 0, 0, 0});
    const auto b = fb.action.b(0);
    double x = 0.3;
    for (auto _ : state) {
        x = 0.05 + 0.9 * b(x);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_FlowBlockEvaluate);

void BM_DenjoyRotationNumber(benchmark::State& state) {
    const auto c = constructions::denjoy_circle_build(RationalMatrix::from_rows({{2}}));
    const auto a = c.action.a();
    for (auto _ : state) benchmark::DoNotOptimize(constructions::rotation_number_estimate(a, state.range(0)));
}
BENCHMARK(BM_DenjoyRotationNumber)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_RotationGroup(benchmark::State& state) {
    const auto a = sl4();
    for (auto _ : state) benchmark::DoNotOptimize(constructions::rotation_vector_group(a));
}
BENCHMARK(BM_RotationGroup);

}  // namespace
BENCHMARK_MAIN();
