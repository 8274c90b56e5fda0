#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "infspace/algebra.hpp"
#include "infspace/coordinates.hpp"
#include "infspace/density.hpp"
#include "infspace/inference.hpp"
#include "infspace/priors.hpp"
#include "infspace/theory.hpp"

namespace infspace::io {

using nlohmann::json;

// Density interchange format:
//   {"axes": [{"name", "spacing", "lower", "upper", "count", "units"}, ...],
//    "frame": "...", "normalized": bool, "values": [row-major values]}

json axis_to_json(const Axis& axis);
Axis axis_from_json(const json& j);

json density_to_json(const Density& d);
/// Throws SchemaError naming the offending field.
Density density_from_json(const json& j);

void write_density(const Density& d, const std::string& path);
/// Throws IOFailure when the file cannot be opened, SchemaError when it
/// does not parse or does not conform.
Density read_density(const std::string& path);

/// One row per node: coordinates, then value; header from the axis names.
void write_csv(const Density& d, const std::string& path);

/// A theory is its joint density plus a sidecar "<path>.provenance.json"
/// holding the provenance and mu.
std::string sidecar_path(const std::string& path);
void write_theory(const TheoryDensity& theory, const std::string& path);
/// Without a sidecar, mu defaults to the noninformative density of the grid.
TheoryDensity read_theory(const std::string& path);

json read_json(const std::string& path);
void write_json(const json& j, const std::string& path);

/// "axis:kind:center:width", e.g. "T:lognormal:1.0:0.001"; "axis:noninformative"
/// is also accepted. Throws ConfigInvalid.
MeasurementModel parse_measurement(const std::string& text);
MeasurementModel measurement_from_json(const json& j);
json measurement_to_json(const MeasurementModel& m);

PriorSpec prior_from_json(const json& j);

/// 1D maps: "identity", "reciprocal", "log[:x0]", "exp[:scale]",
/// "affine:a:b", "power:a".
CoordinateMap parse_map(const std::string& text);
/// 2D maps: "multiplicative_shear", "shear:k", or two 1D maps joined by ','
/// (a product map).
Map2D parse_map2d(const std::string& text);
/// Either a spec string or {"kind": ..., "parameters": [...]}.
CoordinateMap map_from_json(const json& j);

/// "default" (the fall grid), a list of axes "name:spacing:lower:upper:count"
/// joined by ',', or a path to a JSON file with an "axes" array.
GridPtr parse_grid(const std::string& text, const FallingBodyLaw& law,
                   std::size_t nodes_per_decade = 300);
GridPtr grid_from_json(const json& j);

json summary_to_json(const Summary& s);
json posterior_to_json(const Posterior& p);
json axiom_report_to_json(const AxiomReport& r);
json paradox_report_to_json(const ParadoxReport& r);

}  // namespace infspace::io
