#pragma once

/* Closed-form proximal mappings for weighted distance powers and geodesic
 * ball indicators, plus a brute-force one-dimensional oracle used to verify
 * the closed forms.
 *
 * The p-prox of a function f with parameter lambda > 0 is
 *
 *   prox_{f,lambda}(x) = argmin_y  f(y) + 1/(p lambda^{p-1}) d(y,x)^p.
 *
 * For f = (w/p) d(., a)^p the minimizer lies on the geodesic from x to the
 * anchor a at fraction
 *
 *   t* = s / (1 + s),   s = lambda * w^{1/(p-1)},
 *
 * which reduces to the midpoint for w = lambda = 1, p = 2.  The weight
 * convention is selectable: Scaled treats the term as (w/p) d(.,a)^p
 * (default); Unscaled treats it as w d(.,a)^p, i.e. the Scaled form with
 * weight p*w.
 */

#include <functional>

#include "geoprox/geometry.hpp"

namespace geoprox {

// One summand of a splitting objective: f_j = (w_j/p) d(., anchor_j)^p with
// prox parameter lambda_j and relaxation tau_j.
struct ProxTerm {
    Point anchor;
    double weight = 1.0; // in (0, 1]
    double power = 2.0;  // matches SpaceParams::p
    double lambda = 1.0; // > 0
    double tau = 1.0;    // in (0, 1]
};

void validate(const SpaceParams& space, const ProxTerm& term);

// Indicator of the closed geodesic ball B(center, radius).  On the sphere
// the radius must stay below pi/2 so the ball is geodesically convex.
struct BallIndicator {
    Point center;
    double radius = 1.0;
};

void validate(const SpaceParams& space, const BallIndicator& ball);

enum class WeightConvention { Scaled, Unscaled };

using PointMap = std::function<Point(const Point&)>;

Point prox_distance_power(const SpaceParams& space, const ProxTerm& term,
                          const Point& x,
                          WeightConvention convention = WeightConvention::Scaled);

// Metric projection onto the ball: identity inside, radial geodesic pullback
// outside.  Nonexpansive and 1/2-firmly nonexpansive in Hadamard spaces.
Point project_ball(const SpaceParams& space, const BallIndicator& ball,
                   const Point& x);

// (1-tau) Id (+) tau * inner; tau = 1 returns inner(x) exactly.
Point relax(const SpaceParams& space, const PointMap& inner, double tau,
            const Point& x);

// Brute-force prox over the geodesic from x to search_anchor: dense grid of
// 1e4 samples refined by trisection to interval width 1e-10.  Independent of
// the closed forms above; used to validate them.
Point prox_oracle(const SpaceParams& space,
                  const std::function<double(const Point&)>& objective,
                  const Point& x, double lambda, double p,
                  const Point& search_anchor);

} // namespace geoprox
