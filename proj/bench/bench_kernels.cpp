// Serial vs OpenMP for the two fan-out kernels.

#include "covlat/rotation_scan.hpp"

#include <benchmark/benchmark.h>

using namespace covlat;

static void BM_classify(benchmark::State& state)
{
    const auto lat = build_anstar(static_cast<int>(state.range(0)));
    const auto maps = maximal_maps(lat);
    const auto target = identity_target(lat.gram);
    const auto exec = state.range(1) ? Execution::parallel : Execution::serial;
    for (auto _ : state) benchmark::DoNotOptimize(classify(maps, target, exec));
}
BENCHMARK(BM_classify)->ArgNames({"n", "parallel"})->Args({4, 0})->Args({4, 1})->Unit(benchmark::kMillisecond);

static void BM_rotation_scan(benchmark::State& state)
{
    const auto frame = reference_frame(build_anstar(3));
    const auto body = zonal_body(4, 0.01);
    const auto exec = state.range(1) ? Execution::parallel : Execution::serial;
    for (auto _ : state)
        benchmark::DoNotOptimize(rotation_scan(body, frame, static_cast<std::size_t>(state.range(0)), exec));
}
BENCHMARK(BM_rotation_scan)->ArgNames({"grid", "parallel"})->Args({200, 0})->Args({200, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
