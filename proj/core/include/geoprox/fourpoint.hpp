#pragma once

/* Four-point quantities of a p-uniformly convex space with constant c.
 *
 * For points x, y, u, v:
 *
 *   delta(x,y,u,v) = (c/4) (d(x,v)^p + d(y,u)^p - d(x,u)^p - d(y,v)^p)
 *
 *   psi(x,y,u,v)   = (c/2) (d(x,u)^p + d(y,v)^p + d(u,v)^p + d(x,y)^p
 *                           - d(y,u)^p - d(x,v)^p)
 *
 * with the identity  psi = (c/2)(d(x,y)^p + d(u,v)^p) - 2 delta.
 *
 * psi is the transport discrepancy: with u, v the images of x, y under a
 * mapping it measures the deviation of the two steps from parallel
 * transport; quadruples with psi = 0 are the parallelogram-like ones.
 * In p = c = 2 spaces psi >= 0 and delta <= d(x,y) d(u,v); with c < 2
 * (sphere caps) the sign of psi is recorded, not asserted.
 */

#include "geoprox/geometry.hpp"

namespace geoprox {

struct Quadruple {
    Point x, y, u, v;
};

double delta(const SpaceParams& space, const Quadruple& q);
double psi(const SpaceParams& space, const Quadruple& q);

// Uniform convexity constant of a cap of radius delta in a CAT(kappa)
// space:  c = 4 delta sqrt(kappa) tan(pi/2 - 2 delta sqrt(kappa)),
// valid for delta in the open interval (0, pi / (4 sqrt(kappa))).
// Decreases monotonically in delta and tends to 2 as delta -> 0.
double cap_convexity_constant(double kappa, double delta);

} // namespace geoprox
