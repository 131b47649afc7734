#include <benchmark/benchmark.h>

#include <random>

#include "geoprox/geometry.hpp"

using namespace geoprox;

namespace {

std::pair<Point, Point> pair_for(const SpaceParams& space, int dim) {
    std::mt19937_64 rng(42);
    return {random_point(space, dim, rng), random_point(space, dim, rng)};
}

void BM_EuclideanDistance(benchmark::State& state) {
    const auto space = SpaceParams::euclidean();
    const auto [x, y] = pair_for(space, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(distance(space, x, y));
}
BENCHMARK(BM_EuclideanDistance)->Arg(3)->Arg(64);

void BM_SphereDistance(benchmark::State& state) {
    const auto space = SpaceParams::sphere();
    const auto [x, y] = pair_for(space, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(distance(space, x, y));
}
BENCHMARK(BM_SphereDistance)->Arg(3)->Arg(64);

void BM_SpdDistance(benchmark::State& state) {
    const auto space = SpaceParams::spd();
    const auto [x, y] = pair_for(space, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(distance(space, x, y));
}
BENCHMARK(BM_SpdDistance)->Arg(3)->Arg(6)->Arg(10);

void BM_SpdGeodesic(benchmark::State& state) {
    const auto space = SpaceParams::spd();
    const auto [x, y] = pair_for(space, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(geodesic(space, x, y, 0.37));
}
BENCHMARK(BM_SpdGeodesic)->Arg(3)->Arg(6)->Arg(10);

void BM_SymmetricEig(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(7);
    const Point a = random_point(SpaceParams::spd(), n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(spd_symmetric_eig(n, a.data));
}
BENCHMARK(BM_SymmetricEig)->Arg(3)->Arg(6)->Arg(10);

} // namespace
