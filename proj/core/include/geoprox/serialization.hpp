#pragma once

/* JSON and CSV wire formats.
 *
 * Point JSON:    {"kind": "euclidean"|"sphere"|"spd", "dim": d,
 *                 "data": [row-major reals]}
 * ProxTerm JSON: {"anchor": Point, "weight": w, "power": p,
 *                 "lambda": l, "tau": t}
 * Trace CSV:     columns k, residual, frechet_value, cycle_diameter,
 *                dist_to_final; one row per completed cycle.
 *
 * Doubles in CSV are printed with 17 significant digits so that identical
 * runs produce bit-identical files and values round-trip exactly.
 */

#include <iosfwd>
#include <string>

#include "geoprox/diagnostics.hpp"
#include "geoprox/experiment.hpp"

namespace geoprox {

std::string point_to_json(const Point& x);
Point point_from_json(const std::string& text);

std::string prox_term_to_json(const ProxTerm& term);
ProxTerm prox_term_from_json(const std::string& text);

void write_trace_csv(std::ostream& os, const SpaceParams& space, const Trace& trace);
std::string trace_to_csv(const SpaceParams& space, const Trace& trace);

// Full trace structure; iterates and cycle points only when requested.
std::string trace_to_json(const SpaceParams& space, const Trace& trace,
                          bool include_iterates);

std::string summary_to_json(const ExperimentConfig& config, const SweepSummary& summary);
void write_summary_csv(std::ostream& os, const SweepSummary& summary);

std::string regularity_report_to_json(const RegularityReport& report);

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

} // namespace geoprox
