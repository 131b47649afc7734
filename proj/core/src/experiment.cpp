#include "geoprox/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "geoprox/serialization.hpp"

namespace geoprox {

namespace {

long default_burn_in(size_t residual_count) {
    const long k = static_cast<long>(residual_count);
    if (k < 12) return 0;
    return std::min(std::max<long>(5, k / 10), k - 10);
}

double fitted_rate_or_nan(const Trace& trace) {
    try {
        return fit_rate(trace.residuals, default_burn_in(trace.residuals.size())).rate;
    } catch (const InvalidArgument&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

std::vector<Point> generate_points(const ExperimentConfig& config, std::mt19937_64& rng) {
    if (config.points) return *config.points;
    std::vector<Point> points;
    points.reserve(static_cast<size_t>(config.num_points));
    int j = 0;
    try {
        if (config.space.kind == SpaceKind::Sphere && config.cap_delta) {
            const Point pole = random_point(config.space, config.dim, rng);
            for (; j < config.num_points; ++j)
                points.push_back(
                    random_point_in_cap(config.space, pole, *config.cap_delta, rng));
        } else {
            for (; j < config.num_points; ++j)
                points.push_back(random_point(config.space, config.dim, rng));
        }
    } catch (const NumericalError& e) {
        throw NumericalError("run_experiment: sampling point " + std::to_string(j) +
                             " with seed " + std::to_string(config.seed) + ": " +
                             e.what());
    }
    return points;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw NumericalError("run_experiment: cannot open " + path.string());
    os << text;
    if (!os) throw NumericalError("run_experiment: failed writing " + path.string());
}

} // namespace

SpaceParams experiment_space(SpaceKind kind, double p, std::optional<double> cap_delta) {
    switch (kind) {
    case SpaceKind::Euclidean: return SpaceParams::euclidean(p);
    case SpaceKind::Spd: return SpaceParams::spd(p);
    case SpaceKind::Sphere:
        if (cap_delta && *cap_delta < std::numbers::pi / 4.0)
            return SpaceParams::sphere_cap(*cap_delta, 1.0, p);
        return SpaceParams::sphere(p);
    }
    throw InvalidArgument("experiment_space: unknown space kind");
}

void validate(const ExperimentConfig& config) {
    validate(config.space);
    if (std::abs(config.space.p - config.p) > 1e-12)
        throw InvalidArgument("ExperimentConfig: p does not match the space exponent");
    if (config.num_points < 1)
        throw InvalidArgument("ExperimentConfig: num_points must be at least 1");
    if (config.dim < 1 || (config.space.kind == SpaceKind::Sphere && config.dim < 2))
        throw InvalidArgument("ExperimentConfig: dimension too small for the space");
    if (!(config.lambda > 0.0))
        throw InvalidArgument("ExperimentConfig: lambda must be positive");
    if (config.tau_values.empty())
        throw InvalidArgument("ExperimentConfig: tau_values must be nonempty");
    for (double tau : config.tau_values)
        if (!(tau > 0.0) || tau > 1.0)
            throw InvalidArgument("ExperimentConfig: every tau must lie in (0, 1]");
    if (!(config.tol >= 0.0))
        throw InvalidArgument("ExperimentConfig: tol must be nonnegative");
    if (config.max_iters < 1)
        throw InvalidArgument("ExperimentConfig: max_iters must be at least 1");
    if (config.cap_delta) {
        if (config.space.kind != SpaceKind::Sphere)
            throw InvalidArgument("ExperimentConfig: cap_delta applies to the sphere only");
        if (!(*config.cap_delta > 0.0) || *config.cap_delta > std::numbers::pi / 2.0)
            throw InvalidArgument("ExperimentConfig: cap_delta must lie in (0, pi/2]");
    }
    if (config.weights) {
        if (config.weights->size() != static_cast<size_t>(config.num_points))
            throw InvalidArgument("ExperimentConfig: weights length must equal num_points");
        double sum = 0.0;
        for (double w : *config.weights) {
            if (!(w > 0.0) || w > 1.0)
                throw InvalidArgument("ExperimentConfig: every weight must lie in (0, 1]");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw InvalidArgument("ExperimentConfig: explicit weights must sum to 1");
    }
    if (config.points) {
        if (config.points->size() != static_cast<size_t>(config.num_points))
            throw InvalidArgument("ExperimentConfig: points length must equal num_points");
        for (size_t j = 0; j < config.points->size(); ++j) {
            const Point& x = (*config.points)[j];
            try {
                if (x.dim != config.dim)
                    throw InvalidArgument("dimension mismatch");
                validate_point(config.space, x);
            } catch (const InvalidArgument& e) {
                throw InvalidArgument("ExperimentConfig: point " + std::to_string(j) +
                                      ": " + e.what());
            }
        }
    }
}

RunResult run_experiment(const ExperimentConfig& config) {
    validate(config);

    std::mt19937_64 rng(config.seed);
    RunResult result;
    result.data_points = generate_points(config, rng);

    const int m = config.num_points;
    result.weights.assign(static_cast<size_t>(m), 1.0 / m);
    if (config.weights) result.weights = *config.weights;

    std::vector<ProxTerm> terms;
    terms.reserve(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
        ProxTerm term;
        term.anchor = result.data_points[static_cast<size_t>(j)];
        term.weight = result.weights[static_cast<size_t>(j)];
        term.power = config.p;
        term.lambda = config.lambda;
        terms.push_back(std::move(term));
    }

    const bool writing = !config.output_dir.empty();
    std::filesystem::path out_dir(config.output_dir);
    if (writing) std::filesystem::create_directories(out_dir);

    for (size_t i = 0; i < config.tau_values.size(); ++i) {
        const double tau = config.tau_values[i];
        CompositeMap map;
        map.space = config.space;
        map.variant = Variant::Relaxed;
        map.terms = terms;
        for (ProxTerm& term : map.terms) term.tau = tau;

        const Point& x0 = result.data_points.front();
        Trace trace = iterate(map, x0, config.tol, config.max_iters);

        SweepRow row;
        row.tau = tau;
        row.iterations = static_cast<long>(trace.residuals.size());
        row.final_residual = trace.residuals.back();
        row.fitted_rate = fitted_rate_or_nan(trace);
        row.final_cycle_diameter = trace.cycle_diameters.back();
        row.diameter_over_tau = row.final_cycle_diameter / tau;
        row.trace_file = "trace_" + std::to_string(i) + ".csv";

        if (writing) {
            write_file(out_dir / row.trace_file, trace_to_csv(config.space, trace));
            if (config.emit_iterates)
                write_file(out_dir / ("trace_" + std::to_string(i) + ".json"),
                           trace_to_json(config.space, trace, true));
            if (auto report = assess_regularity(map, trace, 200, config.seed))
                write_file(out_dir / ("regularity_" + std::to_string(i) + ".json"),
                           regularity_report_to_json(*report));
        }

        result.summary.rows.push_back(std::move(row));
        result.traces.push_back(std::move(trace));
    }

    if (writing) {
        std::ofstream csv(out_dir / "summary.csv", std::ios::binary);
        write_summary_csv(csv, result.summary);
        write_file(out_dir / "summary.json", summary_to_json(config, result.summary));
    }
    return result;
}

DiameterReport compare_diameters(const SweepSummary& summary) {
    if (summary.rows.size() < 2)
        throw InvalidArgument("compare_diameters: need at least two tau values");
    DiameterReport report;
    for (const SweepRow& row : summary.rows)
        report.rows.push_back({row.tau, row.final_cycle_diameter, row.diameter_over_tau});
    std::sort(report.rows.begin(), report.rows.end(),
              [](const DiameterRow& a, const DiameterRow& b) { return a.tau < b.tau; });

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const DiameterRow& row : report.rows) {
        lo = std::min(lo, row.diameter_over_tau);
        hi = std::max(hi, row.diameter_over_tau);
    }
    report.spread_ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < report.rows.size(); ++i)
        if (!(report.rows[i + 1].diameter > report.rows[i].diameter))
            report.diameter_monotone_in_tau = false;
    return report;
}

GroundTruthReport euclidean_ground_truth(const ExperimentConfig& config) {
    if (config.space.kind != SpaceKind::Euclidean || config.p != 2.0)
        throw InvalidArgument("euclidean_ground_truth: requires Euclidean space with p = 2");
    ExperimentConfig quiet = config;
    quiet.output_dir.clear();
    const RunResult run = run_experiment(quiet);

    // exact minimizer: the weighted arithmetic mean
    std::vector<double> mean(static_cast<size_t>(config.dim), 0.0);
    for (size_t j = 0; j < run.data_points.size(); ++j)
        for (size_t i = 0; i < mean.size(); ++i)
            mean[i] += run.weights[j] * run.data_points[j].data[i];
    GroundTruthReport report;
    report.exact_mean = euclidean_point(std::move(mean));

    for (size_t i = 0; i < run.traces.size(); ++i) {
        const Trace& trace = run.traces[i];
        GroundTruthRow row;
        row.tau = config.tau_values[i];
        row.dist_to_mean = distance(config.space, trace.iterates.back(), report.exact_mean);
        row.cycle_diameter = fixed_point_gap_bound(trace);
        row.bound_holds = row.dist_to_mean <= row.cycle_diameter + 1e-8;
        report.all_hold = report.all_hold && row.bound_holds;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace geoprox
