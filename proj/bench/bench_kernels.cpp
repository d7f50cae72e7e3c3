// OpenMP kernels against their serial twins.

#include "nsmooth/newton.hpp"
#include "nsmooth/oracle.hpp"
#include "nsmooth/pipeline.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace nsmooth;

namespace {

const StarFunction& hyperbola()
{
    static const StarFunction s = star_function(parse_polynomial("t1^2*t2^2 + t1^6", 2));
    return s;
}

void BM_sublevel_parallel(benchmark::State& state)
{
    auto b = BlockStructure::singletons(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_sublevel_measure(hyperbola(), b, 1e-6, 0.875, 1'000'000, 1));
}

void BM_sublevel_serial(benchmark::State& state)
{
    auto b = BlockStructure::singletons(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_sublevel_measure_serial(hyperbola(), b, 1e-6, 0.875, 1'000'000, 1));
}

void BM_fourier_parallel(benchmark::State& state)
{
    auto s = parse_polynomial("t1^2+t2^2", 2);
    auto b = BlockStructure::singletons(2);
    std::vector<double> lambda{0, 0, static_cast<double>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_fourier_transform(s, b, lambda, 0.875, 4'000'000'000));
}

void BM_fourier_serial(benchmark::State& state)
{
    auto s = parse_polynomial("t1^2+t2^2", 2);
    auto b = BlockStructure::singletons(2);
    std::vector<double> lambda{0, 0, static_cast<double>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_fourier_transform_serial(s, b, lambda, 0.875, 4'000'000'000));
}

const StarFunction& five_dim()
{
    static const StarFunction s = star_function(
        parse_polynomial("t1^2*t2 + t2^3*t3 + t3^2*t4^2 + t4^3*t5 + t5^4 + t1^6 + t1*t3*t5", 5));
    return s;
}

void BM_exponents_parallel(benchmark::State& state)
{
    auto b = BlockStructure::singletons(5);
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_exponents(five_dim(), b));
}

void BM_exponents_serial(benchmark::State& state)
{
    auto b = BlockStructure::singletons(5);
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_exponents_serial(five_dim(), b));
}

}  // namespace

BENCHMARK(BM_sublevel_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sublevel_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_fourier_parallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_fourier_serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_exponents_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_exponents_serial)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
