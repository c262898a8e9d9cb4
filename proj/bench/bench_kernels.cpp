#include "ppspec/generators.hpp"
#include "ppspec/kernels.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace ppspec;

namespace {

// Fibonacci support in [-n, n] as plain doubles.
std::vector<double> fibonacci_points(double n)
{
    return window(*fibonacci_source(), Region::interval(-n, n)).support_values();
}

std::vector<double> k_grid(std::size_t count)
{
    std::vector<double> k(count);
    for (std::size_t i = 0; i < count; ++i)
        k[i] = -3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(count);
    return k;
}

void BM_ExponentialSumsSerial(benchmark::State& state)
{
    const auto x = fibonacci_points(static_cast<double>(state.range(0)));
    const std::vector<cplx> w(x.size(), cplx(1.0));
    const auto k = k_grid(512);
    for (auto _ : state)
        benchmark::DoNotOptimize(exponential_sums_serial(x, w, k, 1.0));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size() * k.size()));
}

void BM_ExponentialSumsParallel(benchmark::State& state)
{
    const auto x = fibonacci_points(static_cast<double>(state.range(0)));
    const std::vector<cplx> w(x.size(), cplx(1.0));
    const auto k = k_grid(512);
    for (auto _ : state)
        benchmark::DoNotOptimize(exponential_sums(x, w, k, 1.0));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size() * k.size()));
}

void BM_NeighborPairsSerial(benchmark::State& state)
{
    const auto x = fibonacci_points(static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(neighbor_pairs_serial(x, 10.0));
}

void BM_NeighborPairsParallel(benchmark::State& state)
{
    const auto x = fibonacci_points(static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(neighbor_pairs(x, 10.0));
}

void BM_SmoothedDensitySerial(benchmark::State& state)
{
    const auto x = fibonacci_points(static_cast<double>(state.range(0)));
    const std::vector<cplx> w(x.size(), cplx(1.0));
    const auto omega = SmoothingKernel::triangle(0.4);
    for (auto _ : state)
        benchmark::DoNotOptimize(smoothed_density_serial(x, w, omega, -100.0, 0.02, 10000));
}

void BM_SmoothedDensityParallel(benchmark::State& state)
{
    const auto x = fibonacci_points(static_cast<double>(state.range(0)));
    const std::vector<cplx> w(x.size(), cplx(1.0));
    const auto omega = SmoothingKernel::triangle(0.4);
    for (auto _ : state)
        benchmark::DoNotOptimize(smoothed_density(x, w, omega, -100.0, 0.02, 10000));
}

} // namespace

BENCHMARK(BM_ExponentialSumsSerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExponentialSumsParallel)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NeighborPairsSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NeighborPairsParallel)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SmoothedDensitySerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SmoothedDensityParallel)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
