#pragma once

// Shared sampling helpers for the test suites.  All samplers take an
// explicit engine so every test is reproducible from its stated seed.

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "geoprox/geometry.hpp"

namespace testsupport {

using geoprox::Point;
using geoprox::SpaceKind;
using geoprox::SpaceParams;

inline Point sample(const SpaceParams& space, int dim, std::mt19937_64& rng) {
    return geoprox::random_point(space, dim, rng);
}

// Point in the cap of the given radius around the pole (sphere).
inline Point sample_in_cap(const SpaceParams& space, const Point& pole,
                           double radius, std::mt19937_64& rng) {
    return geoprox::random_point_in_cap(space, pole, radius, rng);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

// log-uniform prox parameter in [1/10, 10]
inline double random_lambda(std::mt19937_64& rng) {
    return std::exp(uniform(rng, std::log(0.1), std::log(10.0)));
}

inline double random_weight(std::mt19937_64& rng) { return uniform(rng, 0.05, 1.0); }

inline std::vector<std::pair<Point, Point>> sample_pairs(const SpaceParams& space,
                                                         int dim, int count,
                                                         std::mt19937_64& rng) {
    std::vector<std::pair<Point, Point>> pairs;
    pairs.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        pairs.emplace_back(sample(space, dim, rng), sample(space, dim, rng));
    return pairs;
}

} // namespace testsupport
