#include "geoprox/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace geoprox {

namespace {

using nlohmann::json;

// round-trip formatting; identical inputs yield identical text
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* kind_to_string(SpaceKind kind) {
    switch (kind) {
    case SpaceKind::Euclidean: return "euclidean";
    case SpaceKind::Sphere: return "sphere";
    case SpaceKind::Spd: return "spd";
    }
    return "euclidean";
}

SpaceKind kind_from_string(const std::string& s) {
    if (s == "euclidean") return SpaceKind::Euclidean;
    if (s == "sphere") return SpaceKind::Sphere;
    if (s == "spd") return SpaceKind::Spd;
    throw InvalidArgument("unknown space kind '" + s + "'");
}

json point_to_value(const Point& x) {
    return json{{"kind", kind_to_string(x.kind)}, {"dim", x.dim}, {"data", x.data}};
}

Point point_from_value(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("dim") || !j.contains("data"))
        throw InvalidArgument("point JSON needs kind, dim, data");
    const SpaceKind kind = kind_from_string(j.at("kind").get<std::string>());
    const int dim = j.at("dim").get<int>();
    std::vector<double> data = j.at("data").get<std::vector<double>>();
    switch (kind) {
    case SpaceKind::Euclidean:
        if (data.size() != static_cast<size_t>(dim))
            throw InvalidArgument("point JSON: data length must equal dim");
        return euclidean_point(std::move(data));
    case SpaceKind::Sphere:
        if (data.size() != static_cast<size_t>(dim))
            throw InvalidArgument("point JSON: data length must equal dim");
        return sphere_point(std::move(data));
    case SpaceKind::Spd:
        return spd_point(dim, std::move(data));
    }
    throw InvalidArgument("point JSON: unknown kind");
}

json term_to_value(const ProxTerm& term) {
    return json{{"anchor", point_to_value(term.anchor)},
                {"weight", term.weight},
                {"power", term.power},
                {"lambda", term.lambda},
                {"tau", term.tau}};
}

ProxTerm term_from_value(const json& j) {
    ProxTerm term;
    term.anchor = point_from_value(j.at("anchor"));
    term.weight = j.at("weight").get<double>();
    term.power = j.at("power").get<double>();
    term.lambda = j.at("lambda").get<double>();
    term.tau = j.at("tau").get<double>();
    return term;
}

json parse(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw InvalidArgument(std::string(what) + ": malformed JSON");
    return j;
}

} // namespace

std::string point_to_json(const Point& x) { return point_to_value(x).dump(); }

Point point_from_json(const std::string& text) {
    return point_from_value(parse(text, "point_from_json"));
}

std::string prox_term_to_json(const ProxTerm& term) { return term_to_value(term).dump(); }

ProxTerm prox_term_from_json(const std::string& text) {
    return term_from_value(parse(text, "prox_term_from_json"));
}

void write_trace_csv(std::ostream& os, const SpaceParams& space, const Trace& trace) {
    os << "k,residual,frechet_value,cycle_diameter,dist_to_final\n";
    const Point& final = trace.iterates.back();
    for (size_t k = 0; k < trace.residuals.size(); ++k) {
        const double dist_to_final = distance(space, trace.iterates[k + 1], final);
        os << k << ',' << fmt(trace.residuals[k]) << ','
           << fmt(trace.frechet_values[k + 1]) << ','
           << fmt(trace.cycle_diameters[k]) << ',' << fmt(dist_to_final) << '\n';
    }
}

std::string trace_to_csv(const SpaceParams& space, const Trace& trace) {
    std::ostringstream os;
    write_trace_csv(os, space, trace);
    return os.str();
}

std::string trace_to_json(const SpaceParams& space, const Trace& trace,
                          bool include_iterates) {
    json j;
    j["stop_reason"] = trace.stop_reason == StopReason::Tolerance ? "tolerance" : "max_iters";
    j["residuals"] = trace.residuals;
    j["frechet_values"] = trace.frechet_values;
    j["cycle_diameters"] = trace.cycle_diameters;
    json dists = json::array();
    const Point& final = trace.iterates.back();
    for (size_t k = 0; k + 1 < trace.iterates.size(); ++k)
        dists.push_back(distance(space, trace.iterates[k + 1], final));
    j["dist_to_final"] = std::move(dists);
    if (include_iterates) {
        json iterates = json::array();
        for (const Point& x : trace.iterates) iterates.push_back(point_to_value(x));
        j["iterates"] = std::move(iterates);
        json cycles = json::array();
        for (const auto& cycle : trace.cycle_points) {
            json points = json::array();
            for (const Point& x : cycle) points.push_back(point_to_value(x));
            cycles.push_back(std::move(points));
        }
        j["cycle_points"] = std::move(cycles);
    }
    return j.dump(2);
}

namespace {

json config_to_value(const ExperimentConfig& config) {
    json j;
    j["space"] = kind_to_string(config.space.kind);
    j["num_points"] = config.num_points;
    j["dim"] = config.dim;
    if (config.weights)
        j["weights"] = *config.weights;
    else
        j["weights"] = "uniform";
    j["p"] = config.p;
    j["lambda"] = config.lambda;
    j["tau_values"] = config.tau_values;
    j["seed"] = config.seed;
    j["tol"] = config.tol;
    j["max_iters"] = config.max_iters;
    j["output_dir"] = config.output_dir;
    j["emit_iterates"] = config.emit_iterates;
    if (config.cap_delta) j["cap_delta"] = *config.cap_delta;
    if (config.points) {
        json points = json::array();
        for (const Point& x : *config.points) points.push_back(point_to_value(x));
        j["points"] = std::move(points);
    }
    return j;
}

} // namespace

std::string summary_to_json(const ExperimentConfig& config, const SweepSummary& summary) {
    json rows = json::array();
    for (const SweepRow& row : summary.rows) {
        json r;
        r["tau"] = row.tau;
        r["iterations"] = row.iterations;
        r["final_residual"] = row.final_residual;
        r["fitted_rate"] = row.fitted_rate;
        r["final_cycle_diameter"] = row.final_cycle_diameter;
        r["diameter_over_tau"] = row.diameter_over_tau;
        r["trace_file"] = row.trace_file;
        rows.push_back(std::move(r));
    }
    json j;
    j["config"] = config_to_value(config);
    j["rows"] = std::move(rows);
    return j.dump(2);
}

void write_summary_csv(std::ostream& os, const SweepSummary& summary) {
    os << "tau,iterations,final_residual,fitted_rate,final_cycle_diameter,diameter_over_tau\n";
    for (const SweepRow& row : summary.rows) {
        os << fmt(row.tau) << ',' << row.iterations << ',' << fmt(row.final_residual)
           << ',' << fmt(row.fitted_rate) << ',' << fmt(row.final_cycle_diameter)
           << ',' << fmt(row.diameter_over_tau) << '\n';
    }
}

std::string regularity_report_to_json(const RegularityReport& report) {
    json constants;
    constants["alpha"] = report.prox_step.alpha;
    constants["epsilon"] = report.prox_step.epsilon;
    constants["epsilon_bar"] = report.epsilon_bar;
    if (report.alpha_bar)
        constants["alpha_bar"] = *report.alpha_bar;
    else
        constants["alpha_bar"] = nullptr;
    constants["rho_empirical"] = report.rho_empirical;
    json j;
    j["constants"] = std::move(constants);
    j["max_excess"] = report.max_excess;
    j["violating_pairs"] = report.violating_pairs;
    j["fitted_rate"] = report.fitted_rate;
    j["r_squared"] = report.r_squared;
    j["gauge_holds"] = report.gauge_holds;
    return j.dump(2);
}

std::string config_to_json(const ExperimentConfig& config) {
    return config_to_value(config).dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
    const json j = parse(text, "config_from_json");
    if (!j.is_object())
        throw InvalidArgument("config_from_json: expected an object");
    ExperimentConfig config;
    SpaceKind kind = SpaceKind::Euclidean;
    if (j.contains("space")) kind = kind_from_string(j.at("space").get<std::string>());
    if (j.contains("num_points")) config.num_points = j.at("num_points").get<int>();
    if (j.contains("dim")) config.dim = j.at("dim").get<int>();
    if (j.contains("weights") && !j.at("weights").is_string())
        config.weights = j.at("weights").get<std::vector<double>>();
    if (j.contains("p")) config.p = j.at("p").get<double>();
    if (j.contains("lambda")) config.lambda = j.at("lambda").get<double>();
    if (j.contains("tau_values"))
        config.tau_values = j.at("tau_values").get<std::vector<double>>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tol")) config.tol = j.at("tol").get<double>();
    if (j.contains("max_iters")) config.max_iters = j.at("max_iters").get<long>();
    if (j.contains("output_dir")) config.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("emit_iterates")) config.emit_iterates = j.at("emit_iterates").get<bool>();
    if (j.contains("cap_delta") && !j.at("cap_delta").is_null())
        config.cap_delta = j.at("cap_delta").get<double>();
    if (j.contains("points") && !j.at("points").is_null()) {
        std::vector<Point> points;
        for (const json& pj : j.at("points")) points.push_back(point_from_value(pj));
        if (!j.contains("num_points")) config.num_points = static_cast<int>(points.size());
        if (!points.empty() && !j.contains("dim")) config.dim = points.front().dim;
        config.points = std::move(points);
    }
    config.space = experiment_space(kind, config.p, config.cap_delta);
    return config;
}

} // namespace geoprox
