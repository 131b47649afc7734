#include "geoprox/fourpoint.hpp"

#include <cmath>
#include <numbers>

namespace geoprox {

namespace {

// d^p, exact multiply for the common p = 2
double dpow(double d, double p) {
    return p == 2.0 ? d * d : std::pow(d, p);
}

} // namespace

double delta(const SpaceParams& space, const Quadruple& q) {
    const double p = space.p;
    const double dxv = dpow(distance(space, q.x, q.v), p);
    const double dyu = dpow(distance(space, q.y, q.u), p);
    const double dxu = dpow(distance(space, q.x, q.u), p);
    const double dyv = dpow(distance(space, q.y, q.v), p);
    return 0.25 * space.c * (dxv + dyu - dxu - dyv);
}

double psi(const SpaceParams& space, const Quadruple& q) {
    const double p = space.p;
    const double dxu = dpow(distance(space, q.x, q.u), p);
    const double dyv = dpow(distance(space, q.y, q.v), p);
    const double duv = dpow(distance(space, q.u, q.v), p);
    const double dxy = dpow(distance(space, q.x, q.y), p);
    const double dyu = dpow(distance(space, q.y, q.u), p);
    const double dxv = dpow(distance(space, q.x, q.v), p);
    return 0.5 * space.c * (dxu + dyv + duv + dxy - dyu - dxv);
}

double cap_convexity_constant(double kappa, double delta) {
    if (!(kappa > 0.0))
        throw InvalidArgument("cap_convexity_constant: kappa must be positive");
    const double sk = std::sqrt(kappa);
    const double limit = std::numbers::pi / (4.0 * sk);
    if (!(delta > 0.0) || !(delta < limit))
        throw InvalidArgument("cap_convexity_constant: delta must lie in (0, pi/(4 sqrt(kappa)))");
    return 4.0 * delta * sk * std::tan(std::numbers::pi / 2.0 - 2.0 * delta * sk);
}

} // namespace geoprox
