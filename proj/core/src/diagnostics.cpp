#include "geoprox/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace geoprox {

namespace {

double dpow(double d, double p) {
    return p == 2.0 ? d * d : std::pow(d, p);
}

constexpr double kNoiseFloor = 1e-12;  // excess below this is rounding noise
constexpr double kResidualFloor = 1e-14;

struct PairExcess {
    double dxy_p = 0.0;
    double dtt_p = 0.0;
    double psi_val = 0.0;
};

std::vector<PairExcess> precompute_excess_terms(
    const SpaceParams& space, const PointMap& map,
    std::span<const std::pair<Point, Point>> pairs) {
    std::vector<PairExcess> out;
    out.reserve(pairs.size());
    for (const auto& [x, y] : pairs) {
        const Point tx = map(x);
        const Point ty = map(y);
        PairExcess e;
        e.dxy_p = dpow(distance(space, x, y), space.p);
        e.dtt_p = dpow(distance(space, tx, ty), space.p);
        e.psi_val = psi(space, Quadruple{x, y, tx, ty});
        out.push_back(e);
    }
    return out;
}

double max_excess_at(std::span<const PairExcess> terms, double alpha, double epsilon) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const PairExcess& e : terms) {
        const double excess =
            e.dtt_p - (1.0 + epsilon) * e.dxy_p + (1.0 - alpha) / alpha * e.psi_val;
        worst = std::max(worst, excess);
    }
    return worst;
}

} // namespace

RegularityConstants prox_constants(double c) {
    if (!(c > 1.5) || c > 2.0)
        throw InvalidArgument("prox_constants: c must lie in (3/2, 2]");
    const double cc = c * (c - 1.0);
    return RegularityConstants{cc / (cc + 2.0), (2.0 - c) / (c - 1.0)};
}

double relaxed_violation(double tau, double epsilon, double c) {
    if (!(tau >= 0.0) || tau > 1.0)
        throw InvalidArgument("relaxed_violation: tau must lie in [0, 1]");
    // tau (2 tau + (1-tau) c + eps (tau + (c/2)(1-tau)) - 2), grouped so the
    // c = 2 case collapses to eps * tau without cancellation error
    return tau * ((2.0 - c) * (tau - 1.0) + epsilon * (tau + 0.5 * c * (1.0 - tau)));
}

CompositeViolation composite_violation(std::span<const double> violations) {
    double prod = 1.0;
    for (double e : violations) {
        if (e < 0.0)
            throw InvalidArgument("composite_violation: violations must be nonnegative");
        prod *= 1.0 + e;
    }
    const double value = prod - 1.0;
    return CompositeViolation{value, value > 1.0};
}

LinearGauge linear_gauge(double rho, double p, RegularityConstants constants) {
    if (!(rho > 0.0))
        throw InvalidArgument("linear_gauge: rho must be positive");
    if (!(p > 1.0))
        throw InvalidArgument("linear_gauge: p must exceed 1");
    if (!(constants.alpha > 0.0) || !(constants.alpha < 1.0))
        throw InvalidArgument("linear_gauge: alpha must lie in (0, 1)");
    if (constants.epsilon < 0.0)
        throw InvalidArgument("linear_gauge: epsilon must be nonnegative");
    const double radicand = 1.0 + constants.epsilon -
                            (1.0 - constants.alpha) /
                                (std::pow(rho, p) * constants.alpha);
    if (!(radicand > 0.0) || !(radicand < 1.0))
        throw InvalidArgument("linear_gauge: rho is inadmissible (radicand " +
                              std::to_string(radicand) + " outside (0, 1))");
    LinearGauge gauge;
    gauge.rho = rho;
    gauge.p = p;
    gauge.alpha = constants.alpha;
    gauge.epsilon = constants.epsilon;
    gauge.gamma = std::pow(radicand, 1.0 / p);
    return gauge;
}

AfneReport check_afne(const SpaceParams& space, const PointMap& map,
                      std::span<const std::pair<Point, Point>> pairs,
                      RegularityConstants constants) {
    if (!(constants.alpha > 0.0) || !(constants.alpha < 1.0))
        throw InvalidArgument("check_afne: alpha must lie in (0, 1)");
    const auto terms = precompute_excess_terms(space, map, pairs);
    AfneReport report;
    report.max_excess = pairs.empty() ? 0.0
                                      : max_excess_at(terms, constants.alpha,
                                                      constants.epsilon);
    for (const PairExcess& e : terms) {
        const double excess = e.dtt_p - (1.0 + constants.epsilon) * e.dxy_p +
                              (1.0 - constants.alpha) / constants.alpha * e.psi_val;
        if (excess > kNoiseFloor) ++report.violating_pairs;
    }
    return report;
}

FejerReport check_fejer(const SpaceParams& space, const Trace& trace,
                        const Point& reference) {
    FejerReport report;
    report.max_increase = 0.0;
    if (trace.iterates.size() < 2) return report;
    double prev = distance(space, trace.iterates.front(), reference);
    double worst = -std::numeric_limits<double>::infinity();
    for (size_t k = 1; k < trace.iterates.size(); ++k) {
        const double cur = distance(space, trace.iterates[k], reference);
        worst = std::max(worst, cur - prev);
        prev = cur;
    }
    report.max_increase = worst;
    return report;
}

RateFit fit_rate(std::span<const double> residuals, long burn_in) {
    if (burn_in < 0)
        throw InvalidArgument("fit_rate: burn_in must be nonnegative");
    std::vector<double> xs, ys;
    for (size_t k = static_cast<size_t>(burn_in); k < residuals.size(); ++k) {
        if (residuals[k] <= kResidualFloor) break; // converged past the FP floor
        xs.push_back(static_cast<double>(k));
        ys.push_back(std::log(residuals[k]));
    }
    if (xs.size() < 10)
        throw InvalidArgument("fit_rate: need at least 10 positive residuals after burn-in");

    const size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    RateFit fit;
    fit.burn_in = burn_in;
    // variance at the rounding floor means constant residuals: zero slope
    if (syy <= 1e-18 * static_cast<double>(n) * std::max(1.0, my * my)) {
        fit.rate = 1.0;
        fit.intercept = my;
        fit.r_squared = 1.0;
        return fit;
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        ss_res += r * r;
    }
    fit.rate = std::exp(slope);
    fit.intercept = intercept;
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    return fit;
}

GaugeReport check_gauge_sequence(std::span<const double> distances,
                                 const LinearGauge& gauge) {
    GaugeReport report;
    for (size_t k = 0; k + 1 < distances.size(); ++k) {
        if (distances[k + 1] > gauge.gamma * distances[k] + 1e-10) {
            report.holds = false;
            report.first_violation = k;
            return report;
        }
    }
    return report;
}

std::optional<double> bisect_composite_alpha(
    const SpaceParams& space, const PointMap& map,
    std::span<const std::pair<Point, Point>> pairs, double epsilon_bar) {
    if (pairs.empty())
        throw InvalidArgument("bisect_composite_alpha: no pairs");
    const auto terms = precompute_excess_terms(space, map, pairs);
    double lo = 1e-12, hi = 1.0 - 1e-12;
    if (max_excess_at(terms, hi, epsilon_bar) > 0.0) return std::nullopt;
    if (max_excess_at(terms, lo, epsilon_bar) <= 0.0) return lo;
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (max_excess_at(terms, mid, epsilon_bar) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::vector<std::pair<Point, Point>> sample_point_pairs(
    const SpaceParams& space, const Point& center, double radius, int count,
    std::mt19937_64& rng) {
    if (count < 0) throw InvalidArgument("sample_point_pairs: negative count");
    if (!(radius > 0.0)) throw InvalidArgument("sample_point_pairs: radius must be positive");
    double r = radius;
    if (space.kind == SpaceKind::Sphere)
        r = std::min(r, 1.4); // stay well clear of the antipode
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto draw = [&]() {
        const Point raw = random_point(space, center.dim, rng);
        const double d = distance(space, center, raw);
        if (d == 0.0) return raw;
        const double t = unif(rng) * std::min(1.0, r / d);
        return geodesic(space, center, raw, t);
    };
    std::vector<std::pair<Point, Point>> pairs;
    pairs.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) pairs.emplace_back(draw(), draw());
    return pairs;
}

std::optional<RegularityReport> assess_regularity(const CompositeMap& map,
                                                  const Trace& trace,
                                                  int pair_count,
                                                  std::uint64_t seed) {
    const SpaceParams& space = map.space;
    if (!(space.c > 1.5) || space.c > 2.0) return std::nullopt;
    if (trace.iterates.empty() || trace.residuals.size() < 12) return std::nullopt;

    RegularityReport report;
    report.prox_step = prox_constants(space.c);

    std::vector<double> violations;
    violations.reserve(map.terms.size());
    for (const ProxTerm& term : map.terms) {
        const double tau = map.variant == Variant::Cyclic ? 1.0 : term.tau;
        violations.push_back(tau * tau * report.prox_step.epsilon);
    }
    report.epsilon_bar = composite_violation(violations).value;

    std::mt19937_64 rng(seed);
    std::vector<Point> anchors;
    anchors.reserve(map.terms.size());
    for (const ProxTerm& term : map.terms) anchors.push_back(term.anchor);
    const double data_diameter = set_diameter(space, anchors);
    const Point& center = trace.iterates.back();
    const double radius = std::max(2.0 * data_diameter, 1e-3);
    const auto pairs = sample_point_pairs(space, center, radius, pair_count, rng);

    const PointMap composite = [&map](const Point& x) {
        return apply_once(map, x).next;
    };
    report.alpha_bar = bisect_composite_alpha(space, composite, pairs, report.epsilon_bar);
    const double alpha_for_check = report.alpha_bar.value_or(0.5);
    const AfneReport afne = check_afne(space, composite, pairs,
                                       RegularityConstants{alpha_for_check,
                                                           report.epsilon_bar});
    report.max_excess = afne.max_excess;
    report.violating_pairs = afne.violating_pairs;

    const long burn_in = std::min<long>(5, static_cast<long>(trace.residuals.size()) - 10);
    const RateFit fit = fit_rate(trace.residuals, std::max<long>(burn_in, 0));
    report.fitted_rate = fit.rate;
    report.r_squared = fit.r_squared;

    // linear monotonicity of the distances to the final iterate at the
    // fitted rate, after the same burn-in
    std::vector<double> dists;
    const size_t start = static_cast<size_t>(std::max<long>(burn_in, 0));
    for (size_t k = start; k + 1 < trace.iterates.size(); ++k)
        dists.push_back(distance(space, trace.iterates[k], trace.iterates.back()));

    for (size_t k = 0; k < dists.size(); ++k) {
        const double residual = trace.residuals[start + k];
        if (residual > 1e-13)
            report.rho_empirical = std::max(report.rho_empirical, dists[k] / residual);
    }
    LinearGauge gauge;
    gauge.p = space.p;
    gauge.alpha = alpha_for_check;
    gauge.epsilon = report.epsilon_bar;
    gauge.gamma = std::min(fit.rate, 1.0);
    report.gauge_holds = check_gauge_sequence(dists, gauge).holds;
    return report;
}

} // namespace geoprox
