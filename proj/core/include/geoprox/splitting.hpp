#pragma once

/* Cyclic composite fixed-point mappings and the iteration driver.
 *
 * A CompositeMap applies, in term order,
 *
 *   x_j = (1 - tau_j) x_{j-1} (+) tau_j prox_{f_j, lambda_j}(x_{j-1}),
 *
 * one full pass being a cycle.  The Cyclic variant is the special case
 * tau_j = 1 for every j (pure prox composition).  iterate() repeats cycles,
 * recording iterates, residuals d(x^k, x^{k+1}), Frechet values, the
 * intermediate points of each cycle, and their diameter; it stops when the
 * residual drops below tol or at max_iters.
 *
 * The diameter of the intermediate points of one cycle bounds the distance
 * from the mapping's fixed point to the minimizer of the summed objective,
 * and shrinks linearly with the relaxation parameters.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "geoprox/prox.hpp"

namespace geoprox {

enum class Variant { Cyclic, Relaxed };

struct CompositeMap {
    SpaceParams space;
    std::vector<ProxTerm> terms;
    Variant variant = Variant::Relaxed;
};

// terms nonempty, each term valid, Cyclic requires tau_j = 1 for all j.
void validate(const CompositeMap& map);

enum class StopReason { Tolerance, MaxIters };

struct Trace {
    std::vector<Point> iterates;                 // x^0 ... x^K
    std::vector<double> residuals;               // d(x^k, x^{k+1}), size K
    std::vector<double> frechet_values;          // one per iterate, size K+1
    std::vector<std::vector<Point>> cycle_points; // m intermediates per cycle
    std::vector<double> cycle_diameters;         // diameter per cycle
    StopReason stop_reason = StopReason::MaxIters;
};

struct ApplyResult {
    Point next;
    std::vector<Point> intermediates; // x_1 ... x_m of the cycle
};

ApplyResult apply_once(const CompositeMap& map, const Point& x);

struct IterateOptions {
    double tol = 1e-10;
    long max_iters = 100000;
    // When set, the term order is reshuffled each cycle with this seed.
    // Off by default: the cycle order is the term list order.
    std::optional<std::uint64_t> shuffle_seed;
};

Trace iterate(const CompositeMap& map, const Point& x0, const IterateOptions& opts);
Trace iterate(const CompositeMap& map, const Point& x0, double tol, long max_iters);

// Weighted Frechet function F(x) = sum_j w_j d(x, a_j)^p with the weights
// normalized to sum 1 (a warning is emitted once if the raw sum is off by
// more than 1e-9).
double frechet_value(const SpaceParams& space, std::span<const ProxTerm> terms,
                     const Point& x);

// Final cycle diameter: an upper-bound proxy for the distance between the
// limiting fixed point and the true minimizer.
double fixed_point_gap_bound(const Trace& trace);

} // namespace geoprox
