#include "dynlab/counting.hpp"

#include <benchmark/benchmark.h>

using namespace dynlab::counting;

namespace {

// y^2 z = x^3 + x z^2 + z^3 over F_5.
PolySystem elliptic() {
    return PolySystem("ec_f5", 5, {AmbientKind::projective, 2},
                      {{{1, {0, 2, 1}}, {-1, {3, 0, 0}}, {-1, {1, 0, 2}}, {-1, {0, 0, 3}}}});
}

void BM_CountParallel(benchmark::State& state) {
    const auto sys = elliptic();
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(count_points(sys, n));
}

void BM_CountReference(benchmark::State& state) {
    const auto sys = elliptic();
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(count_points_reference(sys, n));
}

void BM_HyperellipticCount(benchmark::State& state) {
    const HyperellipticCurve curve(5, {1, 1, 0, 1});
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hyperelliptic_count(curve, n));
}

} // namespace

BENCHMARK(BM_CountParallel)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
// The reference enumerates all q^3 affine tuples, so n = 4 is past its guard.
BENCHMARK(BM_CountReference)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HyperellipticCount)->DenseRange(1, 8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
