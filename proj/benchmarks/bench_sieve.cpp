#include <benchmark/benchmark.h>

#include "omegatri/analytics.hpp"
#include "omegatri/tail.hpp"
#include "omegatri/triangle.hpp"

using namespace omegatri;

static void BM_BasePrimes(benchmark::State& state) {
    const auto limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(base_primes(limit));
}
BENCHMARK(BM_BasePrimes)->Arg(1 << 15)->Arg(1 << 20);

static void BM_DimensionHistogram(benchmark::State& state) {
    const unsigned exponent = static_cast<unsigned>(state.range(0));
    const unsigned threads = static_cast<unsigned>(state.range(1));
    const std::uint64_t hi = std::uint64_t{1} << exponent;
    const auto primes = base_primes(std::max<std::uint64_t>(2, isqrt(hi)));
    SieveOptions options;
    options.threads = threads;
    for (auto _ : state)
        benchmark::DoNotOptimize(dimension_histogram(1, hi, primes, options));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(hi));
}
BENCHMARK(BM_DimensionHistogram)
    ->Args({20, 1})
    ->Args({22, 1})
    ->Args({24, 1})
    ->Args({24, 2})
    ->Args({24, 4})
    ->Unit(benchmark::kMillisecond);

static void BM_SegmentSize(benchmark::State& state) {
    const std::uint64_t hi = std::uint64_t{1} << 24;
    const auto primes = base_primes(isqrt(hi));
    SieveOptions options;
    options.segment_size = static_cast<std::uint64_t>(state.range(0));
    options.threads = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(dimension_histogram(1, hi, primes, options));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(hi));
}
BENCHMARK(BM_SegmentSize)->Arg(1 << 16)->Arg(1 << 18)->Arg(1 << 20)->Arg(1 << 22)
    ->Unit(benchmark::kMillisecond);

static void BM_BuildTriangle(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_triangle(n));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(std::uint64_t{1} << n));
}
BENCHMARK(BM_BuildTriangle)->Arg(16)->Arg(20)->Arg(23)->Unit(benchmark::kMillisecond);

static void BM_TailLimit(benchmark::State& state) {
    const unsigned offset = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tail_limit(offset));
}
BENCHMARK(BM_TailLimit)->Arg(6)->Arg(8)->Arg(10)->Arg(12);

static void BM_EntropyReport(benchmark::State& state) {
    const Triangle t = build_triangle(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(entropy_report(t));
}
BENCHMARK(BM_EntropyReport)->Arg(23);

BENCHMARK_MAIN();
