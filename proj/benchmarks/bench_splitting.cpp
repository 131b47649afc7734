#include <benchmark/benchmark.h>

#include <random>

#include "geoprox/splitting.hpp"

using namespace geoprox;

namespace {

CompositeMap frechet_map(const SpaceParams& space, int dim, int m, double tau) {
    std::mt19937_64 rng(11);
    CompositeMap map;
    map.space = space;
    for (int j = 0; j < m; ++j) {
        ProxTerm t;
        t.anchor = random_point(space, dim, rng);
        t.weight = 1.0 / m;
        t.lambda = 1.0;
        t.tau = tau;
        map.terms.push_back(t);
    }
    return map;
}

void BM_CycleSpd(benchmark::State& state) {
    const auto map = frechet_map(SpaceParams::spd(), 3, static_cast<int>(state.range(0)), 0.5);
    const Point x0 = map.terms.front().anchor;
    for (auto _ : state) benchmark::DoNotOptimize(apply_once(map, x0));
}
BENCHMARK(BM_CycleSpd)->Arg(5)->Arg(20);

void BM_CycleSphere(benchmark::State& state) {
    const auto map =
        frechet_map(SpaceParams::sphere(), 3, static_cast<int>(state.range(0)), 0.5);
    const Point x0 = map.terms.front().anchor;
    for (auto _ : state) benchmark::DoNotOptimize(apply_once(map, x0));
}
BENCHMARK(BM_CycleSphere)->Arg(5)->Arg(20);

void BM_IterateSpdToTolerance(benchmark::State& state) {
    const auto map = frechet_map(SpaceParams::spd(), 3, 20, 0.5);
    const Point x0 = map.terms.front().anchor;
    for (auto _ : state) benchmark::DoNotOptimize(iterate(map, x0, 1e-8, 100000));
}
BENCHMARK(BM_IterateSpdToTolerance);

} // namespace

BENCHMARK_MAIN();
