#pragma once

/* Numerical verification of the regularity theory behind the splitting
 * iterations: almost alpha-firmly nonexpansive (a-alpha-fne) inequalities,
 * the constants they come with, linear gauges, Fejer monotonicity, and
 * empirical convergence-rate estimation.
 *
 * A mapping T is a-alpha-fne with constant alpha in (0,1) and violation
 * eps >= 0 when
 *
 *   d(Tx,Ty)^p <= (1+eps) d(x,y)^p - ((1-alpha)/alpha) psi(x,y,Tx,Ty)
 *
 * for all x, y in the region of interest.  check_afne evaluates the excess
 * of this inequality over a sample of pairs; nonpositive max excess means
 * the property holds on the sample.
 */

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "geoprox/fourpoint.hpp"
#include "geoprox/splitting.hpp"

namespace geoprox {

struct RegularityConstants {
    double alpha = 0.5; // in (0, 1)
    double epsilon = 0.0; // >= 0
};

// Constants of the prox mapping of a convex function in a space with
// convexity constant c in (3/2, 2]:
//   alpha_c = c(c-1) / (c(c-1) + 2),   eps_c = (2-c) / (c-1).
// c = 2 gives (1/2, 0); eps_c < 1 on the whole domain.
RegularityConstants prox_constants(double c);

// Violation of the tau-relaxation (1-tau) Id (+) tau T of a pointwise
// almost nonexpansive T with violation eps:
//   eps_tau = tau (2 tau + (1-tau) c + eps (tau + (c/2)(1-tau)) - 2),
// which collapses to eps * tau when c = 2.
double relaxed_violation(double tau, double epsilon, double c);

// Violation of an m-fold composition: prod(1 + eps_j) - 1.  Values above 1
// leave the regime covered by the convergence theory and are flagged.
struct CompositeViolation {
    double value = 0.0;
    bool exceeds_limit = false; // value > 1
};

CompositeViolation composite_violation(std::span<const double> violations);

// Linear gauge theta(t) = gamma t with
//   gamma = (1 + eps - (1-alpha) / (rho^p alpha))^{1/p},
// admissible whenever the radicand lies strictly in (0, 1).
struct LinearGauge {
    double rho = 1.0;
    double p = 2.0;
    double alpha = 0.5;
    double epsilon = 0.0;
    double gamma = 0.0;
};

LinearGauge linear_gauge(double rho, double p, RegularityConstants constants);

struct AfneReport {
    double max_excess = 0.0;
    long violating_pairs = 0; // pairs with excess beyond noise (> 1e-12)
};

AfneReport check_afne(const SpaceParams& space, const PointMap& map,
                      std::span<const std::pair<Point, Point>> pairs,
                      RegularityConstants constants);

struct FejerReport {
    double max_increase = 0.0; // max_k d(x^{k+1}, ref) - d(x^k, ref)
};

FejerReport check_fejer(const SpaceParams& space, const Trace& trace,
                        const Point& reference);

// Least-squares fit of log(residual) against the iteration index after
// burn_in; rate = exp(slope).  Residuals at or below 1e-14 truncate the fit
// window (converged past the floating point floor).
struct RateFit {
    double rate = 1.0;
    double intercept = 0.0; // log-residual at k = 0 of the fitted line
    double r_squared = 1.0;
    long burn_in = 0;
};

RateFit fit_rate(std::span<const double> residuals, long burn_in);

struct GaugeReport {
    bool holds = true;
    std::optional<std::size_t> first_violation;
};

// Checks d_{k+1} <= gamma d_k + 1e-10 along the whole sequence.
GaugeReport check_gauge_sequence(std::span<const double> distances,
                                 const LinearGauge& gauge);

// Smallest alpha in (0,1) for which the sampled a-alpha-fne inequality with
// violation epsilon_bar holds (40 bisection steps on the sign of the max
// excess).  Returns nullopt when even alpha ~ 1 fails on the sample.
std::optional<double> bisect_composite_alpha(
    const SpaceParams& space, const PointMap& map,
    std::span<const std::pair<Point, Point>> pairs, double epsilon_bar);

// Pairs of points within the ball of the given radius around center, for
// feeding check_afne.  The sampling region is an explicit parameter of any
// reported check.
std::vector<std::pair<Point, Point>> sample_point_pairs(
    const SpaceParams& space, const Point& center, double radius, int count,
    std::mt19937_64& rng);

// Empirical regularity assessment of one composite run: theoretical
// per-step constants, the composite violation, a bisection-estimated
// composite alpha on sampled pairs, the fitted rate, and a gauge-monotone
// check of the distances to the final iterate.  Empty when the space's
// convexity constant lies outside (3/2, 2].
struct RegularityReport {
    RegularityConstants prox_step; // alpha_c, eps_c of one prox
    double epsilon_bar = 0.0;
    std::optional<double> alpha_bar;
    // worst observed d(x^k, x*) / d(x^k, x^{k+1}): the empirical modulus of
    // the error bound behind linear gauges (recorded, never asserted)
    double rho_empirical = 0.0;
    double max_excess = 0.0;
    long violating_pairs = 0;
    double fitted_rate = 1.0;
    double r_squared = 1.0;
    bool gauge_holds = false;
};

std::optional<RegularityReport> assess_regularity(const CompositeMap& map,
                                                  const Trace& trace,
                                                  int pair_count,
                                                  std::uint64_t seed);

} // namespace geoprox
