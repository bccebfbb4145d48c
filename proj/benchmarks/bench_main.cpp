#include "impois/impois.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace impois;

void BM_PhiApply(benchmark::State& state) {
    const RateInterval interval(1.0, 2.0);
    const auto steps = static_cast<std::uint64_t>(state.range(0));
    const auto width = static_cast<std::size_t>(state.range(1));
    std::vector<double> values(width);
    for (std::size_t i = 0; i < width; ++i) values[i] = (i % 3 == 1) ? 1.0 : 0.0;
    const WindowFunction g(0, values);
    const TimeGrid grid(0.0, 1.0, steps);
    for (auto _ : state) benchmark::DoNotOptimize(phi_apply(interval, grid, g));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(steps * (width - 1)));
}
BENCHMARK(BM_PhiApply)->Args({1000, 8})->Args({100000, 8})->Args({100000, 64});

void BM_LowerPrevisionIndicator(benchmark::State& state) {
    const RateInterval interval(1.0, 2.0);
    const auto f = functions::indicator(1);
    const double eps = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lower_prevision(interval, 0.0, 1.0, 0, f, eps));
}
BENCHMARK(BM_LowerPrevisionIndicator)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_PoissonExpectation(benchmark::State& state) {
    const auto f = functions::polynomial(0.0, 1.0, 2);
    const double rate = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(poisson_expectation(rate, 0.0, 1.0, 3, f, 1e-10));
}
BENCHMARK(BM_PoissonExpectation)->Arg(1)->Arg(50);

void BM_PoissonSetOptimizer(benchmark::State& state) {
    const RateInterval interval(1.0, 2.0);
    const auto f = functions::indicator(1);
    for (auto _ : state) benchmark::DoNotOptimize(optimize_poisson_rate(interval, 0.0, 1.0, 0, f, 1e-7));
}
BENCHMARK(BM_PoissonSetOptimizer);

void BM_BruteForcePhi(benchmark::State& state) {
    const RateInterval interval(0.5, 1.5);
    const auto steps = static_cast<std::uint64_t>(state.range(0));
    const WindowFunction g(0, {0.3, -0.2, 0.9, 0.1, 0.5});
    const TimeGrid grid(0.0, 0.5 * static_cast<double>(steps), steps);
    for (auto _ : state) benchmark::DoNotOptimize(oracle::brute_force_phi(interval, grid, g));
}
BENCHMARK(BM_BruteForcePhi)->DenseRange(1, 4);

} // namespace

BENCHMARK_MAIN();
