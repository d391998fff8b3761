#include <benchmark/benchmark.h>

#include "clonal/examples.hpp"
#include "clonal/solver.hpp"
#include "clonal/spectral.hpp"

using namespace clonal;

namespace {

Grid grid_for(const benchmark::State& state) {
    return Grid{static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 6.0, 1.0};
}

void BM_Step(benchmark::State& state) {
    const auto s = example_scenario(2, grid_for(state));
    const Stepper stepper(s);
    DensityField p = s.initial;
    std::size_t n = 0;
    for (auto _ : state) {
        // Restart before the growing example can overflow.
        if (++n % 400 == 0) p = s.initial;
        stepper.advance(p);
        benchmark::DoNotOptimize(p.values().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.grid.size()));
}
BENCHMARK(BM_Step)->Args({241, 101})->Args({481, 201});

void BM_Simulate(benchmark::State& state) {
    const auto s = example_scenario(3, grid_for(state));
    for (auto _ : state) benchmark::DoNotOptimize(simulate(s).totals.back());
}
BENCHMARK(BM_Simulate)->Args({241, 101})->Unit(benchmark::kMillisecond);

void BM_SpectralRadius(benchmark::State& state) {
    const auto s = example_scenario(2, grid_for(state));
    const auto op = assemble(s.coefficients, s.kernel, 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(op).radius);
}
BENCHMARK(BM_SpectralRadius)->Args({241, 101})->Args({241, 401});

void BM_GrowthRate(benchmark::State& state) {
    const auto s = example_scenario(1, grid_for(state));
    for (auto _ : state) benchmark::DoNotOptimize(growth_rate(s.coefficients, s.kernel).lambda);
}
BENCHMARK(BM_GrowthRate)->Args({241, 101})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
