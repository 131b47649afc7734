#include "geoprox/prox.hpp"

#include <cmath>

namespace geoprox {

namespace {

double dpow(double d, double p) {
    return p == 2.0 ? d * d : std::pow(d, p);
}

} // namespace

namespace {

void check_term_scalars(const SpaceParams& space, const ProxTerm& term) {
    if (!(term.weight > 0.0) || term.weight > 1.0)
        throw InvalidArgument("ProxTerm: weight must lie in (0, 1]");
    if (!(term.lambda > 0.0))
        throw InvalidArgument("ProxTerm: lambda must be positive");
    if (!(term.tau > 0.0) || term.tau > 1.0)
        throw InvalidArgument("ProxTerm: tau must lie in (0, 1]");
    if (std::abs(term.power - space.p) > 1e-12)
        throw InvalidArgument("ProxTerm: power does not match the space exponent p");
}

void check_ball_scalars(const SpaceParams& space, const BallIndicator& ball) {
    if (!(ball.radius > 0.0))
        throw InvalidArgument("BallIndicator: radius must be positive");
    if (space.kind == SpaceKind::Sphere && ball.radius >= std::acos(-1.0) / 2.0)
        throw InvalidArgument("BallIndicator: sphere ball radius must stay below pi/2");
}

} // namespace

void validate(const SpaceParams& space, const ProxTerm& term) {
    check_term_scalars(space, term);
    validate_point(space, term.anchor);
}

void validate(const SpaceParams& space, const BallIndicator& ball) {
    check_ball_scalars(space, ball);
    validate_point(space, ball.center);
}

Point prox_distance_power(const SpaceParams& space, const ProxTerm& term,
                          const Point& x, WeightConvention convention) {
    check_term_scalars(space, term);
    const double p = space.p;
    const double w = convention == WeightConvention::Scaled
                         ? term.weight
                         : p * term.weight;
    // stationarity of (w/p)((1-t)D)^p + 1/(p lambda^{p-1}) (tD)^p along the
    // geodesic from x to the anchor
    const double s = term.lambda * std::pow(w, 1.0 / (p - 1.0));
    const double t = s / (1.0 + s);
    return geodesic(space, x, term.anchor, t);
}

Point project_ball(const SpaceParams& space, const BallIndicator& ball,
                   const Point& x) {
    check_ball_scalars(space, ball);
    const double d = distance(space, ball.center, x);
    if (d <= ball.radius) return x;
    return geodesic(space, ball.center, x, ball.radius / d);
}

Point relax(const SpaceParams& space, const PointMap& inner, double tau,
            const Point& x) {
    if (!(tau > 0.0) || tau > 1.0)
        throw InvalidArgument("relax: tau must lie in (0, 1]");
    Point y = inner(x);
    if (tau == 1.0) return y;
    return geodesic(space, x, y, tau);
}

Point prox_oracle(const SpaceParams& space,
                  const std::function<double(const Point&)>& objective,
                  const Point& x, double lambda, double p,
                  const Point& search_anchor) {
    if (!(lambda > 0.0))
        throw InvalidArgument("prox_oracle: lambda must be positive");
    if (!(p > 1.0))
        throw InvalidArgument("prox_oracle: p must exceed 1");
    const double prox_coeff = 1.0 / (p * std::pow(lambda, p - 1.0));

    auto value = [&](double t) {
        const Point y = geodesic(space, x, search_anchor, t);
        const double f = objective(y);
        if (!std::isfinite(f))
            throw NumericalError("prox_oracle: objective is not finite");
        return f + prox_coeff * dpow(distance(space, y, x), p);
    };

    // dense grid, then trisection on the bracketing interval
    const int grid = 10000;
    int best = 0;
    double best_val = value(0.0);
    for (int i = 1; i <= grid; ++i) {
        const double v = value(static_cast<double>(i) / grid);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    double lo = static_cast<double>(best > 0 ? best - 1 : 0) / grid;
    double hi = static_cast<double>(best < grid ? best + 1 : grid) / grid;
    while (hi - lo > 1e-10) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (value(m1) < value(m2))
            hi = m2;
        else
            lo = m1;
    }
    double t = 0.5 * (lo + hi);

    // Parabolic polish.  Near the minimum the sampled values are flat to
    // within evaluation noise (the SPD metric carries ~1e-12 relative
    // jitter), which limits the trisection to ~sqrt(noise/curvature); a
    // three-point quadratic fit over well-separated nodes recovers the
    // vertex far more accurately.
    const double spread = 2e-4;
    const double ta = std::max(0.0, t - spread);
    const double tc = std::min(1.0, t + spread);
    if (tc - ta > 0.5 * spread) {
        const double tb = 0.5 * (ta + tc);
        const double fa = value(ta), fb = value(tb), fc = value(tc);
        const double denom = (tb - ta) * (fb - fc) - (tb - tc) * (fb - fa);
        if (denom < 0.0) { // curvature signal present, vertex is a minimum
            const double num =
                (tb - ta) * (tb - ta) * (fb - fc) - (tb - tc) * (tb - tc) * (fb - fa);
            const double vertex = tb - 0.5 * num / denom;
            if (vertex >= ta - spread && vertex <= tc + spread)
                t = std::clamp(vertex, 0.0, 1.0);
        }
    }
    return geodesic(space, x, search_anchor, t);
}

} // namespace geoprox
