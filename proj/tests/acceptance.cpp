// Acceptance suite: end-to-end checks of the library against its analytic
// fixtures, inequality guarantees, and convergence behavior.  Prints one
// PASS/FAIL line per criterion (with wall time) and exits nonzero when any
// criterion fails or overruns its time budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "geoprox/diagnostics.hpp"
#include "geoprox/experiment.hpp"
#include "geoprox/fourpoint.hpp"
#include "geoprox/serialization.hpp"

using namespace geoprox;

namespace {

constexpr double kPi = std::numbers::pi;

struct Checker {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
    void require_le(double value, double bound, const std::string& what) {
        if (!(value <= bound)) {
            std::ostringstream os;
            os << what << " (" << value << " > " << bound << ")";
            require(false, os.str());
        }
    }
};

int g_failures = 0;

void run_criterion(int id, const std::string& name, double time_budget_s,
                   const std::function<void(Checker&)>& body) {
    Checker check;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(check);
    } catch (const std::exception& e) {
        check.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (check.ok && elapsed > time_budget_s) {
        check.ok = false;
        check.detail = "time budget exceeded";
    }
    if (check.ok) {
        std::printf("[PASS] criterion %2d: %s (%.2f s)\n", id, name.c_str(), elapsed);
    } else {
        std::printf("[FAIL] criterion %2d: %s (%.2f s): %s\n", id, name.c_str(), elapsed,
                    check.detail.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

double dsq(const SpaceParams& space, const Point& a, const Point& b) {
    const double d = distance(space, a, b);
    return d * d;
}

Point basis(int dim, int axis) {
    std::vector<double> v(static_cast<size_t>(dim), 0.0);
    v[static_cast<size_t>(axis)] = 1.0;
    return sphere_point(std::move(v));
}

ExperimentConfig sweep_config(SpaceKind kind, int dim, int m, std::uint64_t seed,
                              std::vector<double> taus,
                              std::optional<double> cap = std::nullopt) {
    ExperimentConfig config;
    config.space = experiment_space(kind, 2.0, cap);
    config.num_points = m;
    config.dim = dim;
    config.lambda = 1.0;
    config.tau_values = std::move(taus);
    config.seed = seed;
    config.tol = 1e-10;
    config.max_iters = 100000;
    config.cap_delta = cap;
    return config;
}

// results shared between criteria 6, 7 and 9
RunResult g_spd_run;
RunResult g_sphere_run;
ExperimentConfig g_spd_config;
ExperimentConfig g_sphere_config;

void criterion_geometry(Checker& check) {
    const auto sph = SpaceParams::sphere();
    check.require_le(std::abs(distance(sph, basis(3, 0), basis(3, 1)) - kPi / 2), 1e-9,
                     "d(e1, e2) = pi/2");
    const Point mid = geodesic(sph, basis(3, 0), basis(3, 1), 0.5);
    check.require_le(std::abs(mid.data[0] - 1.0 / std::sqrt(2.0)), 1e-9,
                     "sphere midpoint");

    const auto eu = SpaceParams::euclidean();
    check.require_le(
        std::abs(distance(eu, euclidean_point({0, 0}), euclidean_point({3, 4})) - 5.0),
        1e-9, "euclidean 3-4-5");

    const auto spd = SpaceParams::spd();
    check.require_le(
        std::abs(distance(spd, spd_identity(2), spd_point(2, {std::exp(1.0), 0, 0, 1})) -
                 1.0),
        1e-9, "d(I, diag(e,1)) = 1");
    const Point g = geodesic(spd, spd_identity(2), spd_point(2, {4, 0, 0, 1}), 0.5);
    check.require_le(std::abs(g.data[0] - 2.0), 1e-9, "I #_0.5 diag(4,1) = diag(2,1)");
    check.require_le(std::abs(g.data[3] - 1.0), 1e-9, "I #_0.5 diag(4,1) = diag(2,1)");

    std::mt19937_64 rng(2024);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 5;
        std::vector<double> m(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double v = normal(rng);
                m[i * n + j] = v;
                m[j * n + i] = v;
            }
        const SymmetricEig eig = spd_symmetric_eig(n, m);
        double err = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double r = 0.0;
                for (int k = 0; k < n; ++k)
                    r += eig.vectors[i * n + k] * eig.values[k] * eig.vectors[j * n + k];
                err = std::max(err, std::abs(r - m[i * n + j]));
            }
        check.require_le(err, 1e-9, "5x5 eigendecomposition reconstruction");
    }
}

void criterion_fourpoint(Checker& check) {
    std::mt19937_64 rng(2025);
    for (const auto& space : {SpaceParams::euclidean(), SpaceParams::spd()}) {
        double min_psi = 0.0, worst_cs = -1.0, worst_id = 0.0;
        for (int rep = 0; rep < 10000; ++rep) {
            const Quadruple q{random_point(space, 3, rng), random_point(space, 3, rng),
                              random_point(space, 3, rng), random_point(space, 3, rng)};
            const double psi_val = psi(space, q);
            const double delta_val = delta(space, q);
            min_psi = std::min(min_psi, psi_val);
            worst_cs = std::max(worst_cs, delta_val - distance(space, q.x, q.y) *
                                                          distance(space, q.u, q.v));
            const double identity =
                psi_val - (dsq(space, q.x, q.y) + dsq(space, q.u, q.v) - 2.0 * delta_val);
            worst_id = std::max(worst_id, std::abs(identity));
        }
        check.require(min_psi >= -1e-10, "psi nonnegative (p = c = 2)");
        check.require_le(worst_cs, 1e-10, "delta <= d(x,y) d(u,v)");
        check.require_le(worst_id, 1e-10, "psi/delta identity");
    }
}

void criterion_prox(Checker& check) {
    std::mt19937_64 rng(2026);
    for (const auto& space :
         {SpaceParams::euclidean(), SpaceParams::sphere(), SpaceParams::spd()}) {
        const Point pole = random_point(space, 3, rng);
        auto draw = [&]() {
            if (space.kind == SpaceKind::Sphere)
                return random_point_in_cap(space, pole, 0.7, rng);
            return random_point(space, 3, rng);
        };
        std::uniform_real_distribution<double> wdist(0.05, 1.0);
        std::uniform_real_distribution<double> ldist(std::log(0.1), std::log(10.0));

        // the unit midpoint case first
        {
            const Point x = draw();
            ProxTerm term;
            term.anchor = draw();
            term.weight = 1.0;
            term.lambda = 1.0;
            const Point prox = prox_distance_power(space, term, x);
            check.require_le(distance(space, prox, geodesic(space, x, term.anchor, 0.5)),
                             1e-9, "midpoint case of the closed form");
        }

        double worst = 0.0;
        for (int rep = 0; rep < 200; ++rep) {
            const Point x = draw();
            ProxTerm term;
            term.anchor = draw();
            term.weight = wdist(rng);
            term.lambda = std::exp(ldist(rng));
            const Point closed = prox_distance_power(space, term, x);
            const auto objective = [&](const Point& y) {
                return term.weight / 2.0 * dsq(space, y, term.anchor);
            };
            const Point oracle =
                prox_oracle(space, objective, x, term.lambda, 2.0, term.anchor);
            worst = std::max(worst, distance(space, closed, oracle));
        }
        check.require_le(worst, 1e-6, "closed form vs oracle");
    }
}

void criterion_regularity(Checker& check) {
    std::mt19937_64 rng(2027);
    for (const auto& space : {SpaceParams::euclidean(), SpaceParams::spd()}) {
        ProxTerm term;
        term.anchor = random_point(space, 3, rng);
        term.weight = 0.5;
        term.lambda = 1.0;
        const PointMap prox = [&space, term](const Point& p) {
            return prox_distance_power(space, term, p);
        };

        std::vector<std::pair<Point, Point>> pairs;
        for (int rep = 0; rep < 1000; ++rep)
            pairs.emplace_back(random_point(space, 3, rng), random_point(space, 3, rng));
        const AfneReport report = check_afne(space, prox, pairs, {0.5, 0.0});
        check.require_le(report.max_excess, 1e-8, "prox is 1/2-firmly nonexpansive");

        double worst_mono = -1.0, worst_ineq = -1.0;
        const auto f = [&](const Point& y) {
            return term.weight / 2.0 * dsq(space, y, term.anchor);
        };
        for (int rep = 0; rep < 500; ++rep) {
            const Point x = random_point(space, 3, rng);
            const Point y = random_point(space, 3, rng);
            const Point tx = prox(x);
            const Point ty = prox(y);
            worst_mono =
                std::max(worst_mono, dsq(space, tx, ty) - delta(space, {x, y, tx, ty}));
            worst_ineq = std::max(worst_ineq, 1.0 / term.lambda *
                                                      delta(space, {tx, x, tx, y}) -
                                                  (f(y) - f(tx)));
        }
        check.require_le(worst_mono, 1e-8, "metric monotonicity of prox pairs");
        check.require_le(worst_ineq, 1e-8, "prox inequality");
    }
}

void criterion_constants(Checker& check) {
    const RegularityConstants h = prox_constants(2.0);
    check.require(h.alpha == 0.5 && h.epsilon == 0.0, "prox_constants(2) = (1/2, 0)");

    std::mt19937_64 rng(2028);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const double tau = unif(rng);
        const double eps = unif(rng);
        worst = std::max(worst, std::abs(relaxed_violation(tau, eps, 2.0) - eps * tau));
    }
    check.require_le(worst, 5e-15, "relaxed violation collapses to eps*tau at c = 2");

    const std::vector<double> halves = {0.5, 0.5};
    const CompositeViolation cv = composite_violation(halves);
    check.require(cv.exceeds_limit && std::abs(cv.value - 1.25) < 1e-15,
                  "composite violation flags values above 1");
    const std::vector<double> zeros = {0.0, 0.0, 0.0};
    check.require(!composite_violation(zeros).exceeds_limit,
                  "zero violations stay in bounds");

    const LinearGauge gauge = linear_gauge(2.0, 2.0, {0.5, 0.0});
    check.require_le(std::abs(gauge.gamma - std::sqrt(0.75)), 1e-12,
                     "linear gauge gamma = sqrt(3)/2");
}

void criterion_convergence(Checker& check) {
    g_spd_config = sweep_config(SpaceKind::Spd, 3, 20, 7, {0.9, 0.1, 0.005});
    g_spd_run = run_experiment(g_spd_config);
    g_sphere_config = sweep_config(SpaceKind::Sphere, 3, 20, 7, {0.9, 0.1, 0.005}, 0.7);
    g_sphere_run = run_experiment(g_sphere_config);

    for (const auto* run : {&g_spd_run, &g_sphere_run}) {
        for (size_t i = 0; i < run->traces.size(); ++i) {
            const Trace& trace = run->traces[i];
            check.require(trace.stop_reason == StopReason::Tolerance,
                          "run reaches the residual tolerance");
            check.require(trace.residuals.back() < 1e-10, "final residual below 1e-10");
            const RateFit fit = fit_rate(trace.residuals,
                                         std::min<long>(5, static_cast<long>(
                                                               trace.residuals.size()) -
                                                               10));
            check.require(fit.r_squared > 0.99, "log-residual fit is linear (r^2)");
            check.require(fit.rate < 1.0, "fitted contraction rate below one");
        }
    }
}

void criterion_diameters(Checker& check) {
    check.require(!g_spd_run.summary.rows.empty(), "criterion 6 ran first");
    const DiameterReport spd = compare_diameters(g_spd_run.summary);
    check.require(spd.diameter_monotone_in_tau, "SPD cycle diameter monotone in tau");
    check.require_le(spd.spread_ratio, 2.0, "SPD diameter/tau spread below 2");

    const DiameterReport sph = compare_diameters(g_sphere_run.summary);
    check.require(sph.diameter_monotone_in_tau, "sphere cycle diameter monotone in tau");
    check.require_le(sph.spread_ratio, 4.0, "sphere diameter/tau spread below 4");
    std::printf("       diameter/tau: spd spread %.4f, sphere spread %.4f\n",
                spd.spread_ratio, sph.spread_ratio);
}

void criterion_ground_truth(Checker& check) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ExperimentConfig config =
            sweep_config(SpaceKind::Euclidean, 3, 20, seed, {0.5, 0.1, 0.01});
        const GroundTruthReport report = euclidean_ground_truth(config);
        for (const GroundTruthRow& row : report.rows)
            check.require(row.bound_holds,
                          "distance to the mean bounded by the cycle diameter (seed " +
                              std::to_string(seed) + ")");
    }
}

void criterion_fejer(Checker& check) {
    check.require(!g_spd_run.traces.empty(), "criterion 6 ran first");
    for (size_t i = 0; i < g_spd_run.traces.size(); ++i) {
        const Trace& trace = g_spd_run.traces[i];
        const FejerReport report =
            check_fejer(g_spd_config.space, trace, trace.iterates.back());
        check.require_le(report.max_increase, 1e-8, "SPD run is Fejer monotone");
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const ExperimentConfig config =
            sweep_config(SpaceKind::Euclidean, 3, 20, seed, {0.5, 0.1, 0.01});
        const RunResult run = run_experiment(config);
        for (const Trace& trace : run.traces) {
            const FejerReport report =
                check_fejer(config.space, trace, trace.iterates.back());
            check.require_le(report.max_increase, 1e-8, "euclidean run is Fejer monotone");
        }
    }
}

void criterion_determinism(Checker& check) {
    namespace fs = std::filesystem;
    const fs::path dir_a = fs::temp_directory_path() / "geoprox_accept_a";
    const fs::path dir_b = fs::temp_directory_path() / "geoprox_accept_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    ExperimentConfig config = sweep_config(SpaceKind::Spd, 3, 10, 99, {0.5, 0.1});
    config.tol = 1e-8;
    config.output_dir = dir_a.string();
    run_experiment(config);
    config.output_dir = dir_b.string();
    run_experiment(config);

    auto slurp = [](const fs::path& p) {
        std::ifstream is(p, std::ios::binary);
        std::ostringstream os;
        os << is.rdbuf();
        return os.str();
    };
    for (const char* name : {"trace_0.csv", "trace_1.csv", "summary.csv"}) {
        const std::string a = slurp(dir_a / name);
        check.require(!a.empty() && a == slurp(dir_b / name),
                      std::string("bit-identical ") + name);
    }
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

} // namespace

int main() {
    std::printf("geoprox acceptance suite\n");
    run_criterion(1, "geometry exactness", 1.0, criterion_geometry);
    run_criterion(2, "four-point inequalities and identity", 10.0, criterion_fourpoint);
    run_criterion(3, "closed-form prox against the oracle", 30.0, criterion_prox);
    run_criterion(4, "prox regularity (firm nonexpansivity)", 60.0, criterion_regularity);
    run_criterion(5, "theoretical constants and gauges", 1.0, criterion_constants);
    run_criterion(6, "linear convergence on SPD and sphere", 300.0, criterion_convergence);
    run_criterion(7, "cycle diameter scaling across tau", 300.0, criterion_diameters);
    run_criterion(8, "euclidean ground-truth bound", 30.0, criterion_ground_truth);
    run_criterion(9, "Fejer monotonicity of convergent runs", 300.0, criterion_fejer);
    run_criterion(10, "deterministic experiment output", 60.0, criterion_determinism);

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
