#pragma once

/* Experiment driver: Frechet-mean runs over a sweep of relaxation
 * parameters, with CSV/JSON trace export and summary statistics.
 *
 * One experiment samples m data points in the chosen space, builds the
 * relaxed cyclic prox mapping with a shared lambda, and iterates it once per
 * tau value from the same starting point (the first data point).  Each run
 * writes a per-iteration CSV trace; the sweep is summarized by iteration
 * counts, fitted contraction rates, and final cycle diameters.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoprox/diagnostics.hpp"
#include "geoprox/splitting.hpp"

namespace geoprox {

struct ExperimentConfig {
    SpaceParams space;
    int num_points = 20;
    int dim = 3;
    // Explicit weights (must sum to 1 within 1e-9); empty = uniform 1/m.
    std::optional<std::vector<double>> weights;
    double p = 2.0;
    double lambda = 1.0;
    std::vector<double> tau_values;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    long max_iters = 100000;
    std::string output_dir; // empty = keep everything in memory
    bool emit_iterates = false;
    // Sphere only: sample the data inside the cap of this radius around a
    // seeded random pole.  Unset = uniform over the whole sphere.
    std::optional<double> cap_delta;
    // Explicit data points override sampling entirely.
    std::optional<std::vector<Point>> points;
};

void validate(const ExperimentConfig& config);

// Space for an experiment: Euclidean/SPD with exponent p, or the sphere,
// which picks up the cap convexity constant when the cap is small enough
// for it to be defined (delta < pi/4 for the unit sphere).
SpaceParams experiment_space(SpaceKind kind, double p,
                             std::optional<double> cap_delta);

struct SweepRow {
    double tau = 0.0;
    long iterations = 0;
    double final_residual = 0.0;
    double fitted_rate = 0.0;
    double final_cycle_diameter = 0.0;
    double diameter_over_tau = 0.0;
    std::string trace_file;
};

struct SweepSummary {
    std::vector<SweepRow> rows;
};

struct RunResult {
    SweepSummary summary;
    std::vector<Trace> traces;   // one per tau
    std::vector<Point> data_points;
    std::vector<double> weights; // normalized
};

// Runs the full sweep; writes trace CSVs, summary.csv, summary.json and
// per-run regularity reports when output_dir is set.  Deterministic per
// seed: identical configs produce bit-identical files.
RunResult run_experiment(const ExperimentConfig& config);

struct DiameterRow {
    double tau = 0.0;
    double diameter = 0.0;
    double diameter_over_tau = 0.0;
};

struct DiameterReport {
    std::vector<DiameterRow> rows;      // sorted by tau ascending
    double spread_ratio = 1.0;          // max/min of diameter_over_tau
    bool diameter_monotone_in_tau = true;
};

// Requires at least two tau values in the summary.
DiameterReport compare_diameters(const SweepSummary& summary);

struct GroundTruthRow {
    double tau = 0.0;
    double dist_to_mean = 0.0;
    double cycle_diameter = 0.0;
    bool bound_holds = false; // dist <= diameter + 1e-8
};

struct GroundTruthReport {
    Point exact_mean;
    std::vector<GroundTruthRow> rows;
    bool all_hold = true;
};

// Euclidean p = 2 only: compares the final iterates of a sweep against the
// exact weighted arithmetic mean and checks the cycle-diameter bound.
GroundTruthReport euclidean_ground_truth(const ExperimentConfig& config);

} // namespace geoprox
