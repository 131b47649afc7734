#include "geoprox/splitting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace geoprox {

namespace {

double dpow(double d, double p) {
    return p == 2.0 ? d * d : std::pow(d, p);
}

Point apply_cycle(const CompositeMap& map, const Point& x,
                  std::span<const int> order, std::vector<Point>& intermediates) {
    Point cur = x;
    intermediates.clear();
    intermediates.reserve(map.terms.size());
    for (int j : order) {
        const ProxTerm& term = map.terms[static_cast<size_t>(j)];
        Point inner = prox_distance_power(map.space, term, cur);
        if (map.variant == Variant::Cyclic || term.tau == 1.0)
            cur = std::move(inner);
        else
            cur = geodesic(map.space, cur, inner, term.tau);
        intermediates.push_back(cur);
    }
    return cur;
}

} // namespace

void validate(const CompositeMap& map) {
    validate(map.space);
    if (map.terms.empty())
        throw InvalidArgument("CompositeMap: needs at least one term");
    for (const ProxTerm& term : map.terms) {
        validate(map.space, term);
        if (map.variant == Variant::Cyclic && term.tau != 1.0)
            throw InvalidArgument("CompositeMap: the Cyclic variant requires tau = 1 for every term");
    }
}

ApplyResult apply_once(const CompositeMap& map, const Point& x) {
    validate(map);
    std::vector<int> order(map.terms.size());
    std::iota(order.begin(), order.end(), 0);
    ApplyResult result;
    result.next = apply_cycle(map, x, order, result.intermediates);
    return result;
}

Trace iterate(const CompositeMap& map, const Point& x0, const IterateOptions& opts) {
    validate(map);
    validate_point(map.space, x0);
    if (!(opts.tol >= 0.0))
        throw InvalidArgument("iterate: tol must be nonnegative");
    if (opts.max_iters < 1)
        throw InvalidArgument("iterate: max_iters must be at least 1");

    std::optional<std::mt19937_64> shuffle_rng;
    if (opts.shuffle_seed) shuffle_rng.emplace(*opts.shuffle_seed);
    std::vector<int> order(map.terms.size());
    std::iota(order.begin(), order.end(), 0);

    Trace trace;
    trace.iterates.push_back(x0);
    trace.frechet_values.push_back(frechet_value(map.space, map.terms, x0));
    trace.stop_reason = StopReason::MaxIters;

    Point cur = x0;
    std::vector<Point> intermediates;
    for (long k = 0; k < opts.max_iters; ++k) {
        if (shuffle_rng) std::shuffle(order.begin(), order.end(), *shuffle_rng);
        Point next = apply_cycle(map, cur, order, intermediates);
        const double residual = distance(map.space, cur, next);
        const double value = frechet_value(map.space, map.terms, next);
        if (!std::isfinite(residual) || !std::isfinite(value))
            throw NumericalError("iterate: non-finite value at iteration " + std::to_string(k));

        trace.residuals.push_back(residual);
        trace.cycle_diameters.push_back(set_diameter(map.space, intermediates));
        trace.cycle_points.push_back(intermediates);
        trace.iterates.push_back(next);
        trace.frechet_values.push_back(value);
        cur = std::move(next);

        if (residual < opts.tol) {
            trace.stop_reason = StopReason::Tolerance;
            break;
        }
    }
    return trace;
}

Trace iterate(const CompositeMap& map, const Point& x0, double tol, long max_iters) {
    IterateOptions opts;
    opts.tol = tol;
    opts.max_iters = max_iters;
    return iterate(map, x0, opts);
}

double frechet_value(const SpaceParams& space, std::span<const ProxTerm> terms,
                     const Point& x) {
    if (terms.empty())
        throw InvalidArgument("frechet_value: needs at least one term");
    double raw = 0.0;
    for (const ProxTerm& term : terms) raw += term.weight;
    if (std::abs(raw - 1.0) > 1e-9) {
        static std::atomic_flag warned = ATOMIC_FLAG_INIT;
        if (!warned.test_and_set())
            std::fprintf(stderr,
                         "geoprox: warning: frechet_value normalizing weights (raw sum %.17g)\n",
                         raw);
    }
    double value = 0.0;
    for (const ProxTerm& term : terms)
        value += (term.weight / raw) * dpow(distance(space, x, term.anchor), term.power);
    return value;
}

double fixed_point_gap_bound(const Trace& trace) {
    if (trace.cycle_diameters.empty())
        throw InvalidArgument("fixed_point_gap_bound: trace has no completed cycle");
    return trace.cycle_diameters.back();
}

} // namespace geoprox
