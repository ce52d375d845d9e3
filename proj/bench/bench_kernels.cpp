// Serial reference vs OpenMP kernels.

#include "curvadapt/random.hpp"
#include "curvadapt/sweep.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace curvadapt;

namespace {

tube::RelationProblem problem() {
    tube::RelationProblem p;
    p.mu1 = 6.0;
    p.mu2 = 2.0;
    p.window = std::numbers::pi / (8 * std::sqrt(6.0));
    return p;
}

template <auto Kernel>
void residual_grid(benchmark::State& state) {
    const auto prob = problem();
    const sweep::GridSpec grid{static_cast<int>(state.range(0)), -50.0, 50.0};
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(prob, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

template <auto Kernel>
void sectional_range(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(SpaceSign::compact, static_cast<int>(state.range(0)), kDefaultSeed));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void spectrum_batch(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(SpaceSign::compact, static_cast<int>(state.range(0)), kDefaultSeed));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(residual_grid<sweep::residual_grid_serial>)->Name("residual_grid/serial")->Arg(61)->Arg(121);
BENCHMARK(residual_grid<sweep::residual_grid_parallel>)->Name("residual_grid/parallel")->Arg(61)->Arg(121);
BENCHMARK(sectional_range<sweep::sectional_range_serial>)->Name("sectional_range/serial")->Arg(10000);
BENCHMARK(sectional_range<sweep::sectional_range_parallel>)->Name("sectional_range/parallel")->Arg(10000);
BENCHMARK(spectrum_batch<sweep::spectrum_batch_serial>)->Name("spectrum_batch/serial")->Arg(200);
BENCHMARK(spectrum_batch<sweep::spectrum_batch_parallel>)->Name("spectrum_batch/parallel")->Arg(200);

BENCHMARK_MAIN();
