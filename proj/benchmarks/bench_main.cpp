#include <benchmark/benchmark.h>

#include <random>

#include "ellmu/analysis.hpp"
#include "ellmu/point_count.hpp"

using namespace ellmu;

namespace {

std::array<ff_elem, 5> random_curve(const field_ctx& F, std::mt19937_64& rng) {
    for (;;) {
        std::array<ff_elem, 5> a;
        for (auto& x : a) x = F.random(rng);
        if (discriminant(F, a) != F.zero()) return a;
    }
}

void BM_CountPoints(benchmark::State& state) {
    const auto p = static_cast<std::uint32_t>(state.range(0));
    const auto e = static_cast<std::uint32_t>(state.range(1));
    const auto F = field_ctx::canonical(p, e);
    F->tables();
    std::mt19937_64 rng(1);
    const auto a = random_curve(*F, rng);
    for (auto _ : state) benchmark::DoNotOptimize(count_points(*F, a));
    state.SetLabel("q=" + std::to_string(F->size()));
}
BENCHMARK(BM_CountPoints)->Args({101, 1})->Args({1009, 1})->Args({2, 12})->Args({3, 7})->Unit(benchmark::kMicrosecond);

void BM_TateAtPlace(benchmark::State& state) {
    const auto F = field_ctx::prime(3);
    const auto m = legendre_curve(parse_rational_function(F, "(1+t+t^2)/(1+t)"));
    const place v(poly::from_ints(F, {1, 1}));
    for (auto _ : state) benchmark::DoNotOptimize(tate(m, v));
}
BENCHMARK(BM_TateAtPlace)->Unit(benchmark::kMicrosecond);

void BM_PowerSum(benchmark::State& state) {
    const auto F = field_ctx::prime(5);
    const auto s = survey_places(legendre_curve(parse_rational_function(F, "(t^3+t+1)/t^2")));
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fiber_sum_closed_places(s, k));
}
BENCHMARK(BM_PowerSum)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_AnalyzeTwist(benchmark::State& state) {
    const auto F = field_ctx::prime(7);
    const auto m = quadratic_twist(legendre_curve(parse_rational_function(F, "1/t^2")), parse_rational_function(F, "t^3-5*t"));
    for (auto _ : state) benchmark::DoNotOptimize(analyze(m));
}
BENCHMARK(BM_AnalyzeTwist)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
