#include "infspace/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "infspace/error.hpp"

namespace infspace::io {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigInvalid(field + ": '" + text + "' is not a number");
  }
}

template <typename T>
T field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) {
    throw SchemaError(where + ": missing field '" + name + "'");
  }
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw SchemaError(where + ": field '" + name + "' has the wrong type");
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IOFailure("cannot open '" + path + "' for writing");
  out.precision(17);
  return out;
}

}  // namespace

json axis_to_json(const Axis& a) {
  return {{"name", a.name()},   {"spacing", to_string(a.spacing())},
          {"lower", a.lower()}, {"upper", a.upper()},
          {"count", a.count()}, {"units", a.units()}};
}

Axis axis_from_json(const json& j) {
  const std::string where = "axis";
  try {
    return Axis(field<std::string>(j, "name", where),
                spacing_from_string(field<std::string>(j, "spacing", where)),
                field<double>(j, "lower", where), field<double>(j, "upper", where),
                field<std::size_t>(j, "count", where),
                j.contains("units") ? field<std::string>(j, "units", where) : std::string());
  } catch (const InvalidAxis& e) {
    throw SchemaError(std::string("axis: ") + e.what());
  }
}

GridPtr grid_from_json(const json& j) {
  if (!j.is_object() || !j.contains("axes") || !j["axes"].is_array()) {
    throw SchemaError("grid: missing 'axes' array");
  }
  const json& axes = j["axes"];
  try {
    if (axes.size() == 1) return make_grid(axis_from_json(axes[0]));
    if (axes.size() == 2) return make_grid(axis_from_json(axes[0]), axis_from_json(axes[1]));
  } catch (const InvalidGrid& e) {
    throw SchemaError(std::string("grid: ") + e.what());
  }
  throw SchemaError("grid: 'axes' must hold 1 or 2 axes");
}

json density_to_json(const Density& d) {
  json axes = json::array();
  for (const Axis& a : d.grid().axes()) axes.push_back(axis_to_json(a));
  return {{"axes", axes},
          {"frame", d.frame()},
          {"normalized", d.normalized()},
          {"values", std::vector<double>(d.values().begin(), d.values().end())}};
}

Density density_from_json(const json& j) {
  const GridPtr grid = grid_from_json(j);
  if (!j.contains("values") || !j["values"].is_array()) {
    throw SchemaError("density: missing 'values' array");
  }
  const json& vj = j["values"];
  if (vj.size() != grid->size()) {
    throw SchemaError("density: 'values' has " + std::to_string(vj.size()) +
                      " entries, axes need " + std::to_string(grid->size()));
  }
  std::vector<double> values;
  values.reserve(vj.size());
  for (const json& v : vj) {
    if (!v.is_number()) throw SchemaError("density: 'values' must be numbers");
    values.push_back(v.get<double>());
  }
  const std::string frame = j.contains("frame") ? field<std::string>(j, "frame", "density") : "";
  const bool normalized = j.contains("normalized") && field<bool>(j, "normalized", "density");
  try {
    return Density(grid, std::move(values), frame, normalized);
  } catch (const InvalidDensity& e) {
    throw SchemaError(std::string("density: ") + e.what());
  }
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOFailure("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path + "': " + e.what());
  }
}

void write_json(const json& j, const std::string& path) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw IOFailure("failed writing '" + path + "'");
}

void write_density(const Density& d, const std::string& path) {
  auto out = open_out(path);
  out << density_to_json(d).dump() << '\n';
  if (!out) throw IOFailure("failed writing '" + path + "'");
}

Density read_density(const std::string& path) { return density_from_json(read_json(path)); }

void write_csv(const Density& d, const std::string& path) {
  auto out = open_out(path);
  const Grid& g = d.grid();
  for (const Axis& a : g.axes()) out << a.name() << ',';
  out << "value\n";
  for (std::size_t n = 0; n < d.size(); ++n) {
    const Point p = g.coordinates(n);
    out << p[0] << ',';
    if (g.dimension() == 2) out << p[1] << ',';
    out << d[n] << '\n';
  }
  if (!out) throw IOFailure("failed writing '" + path + "'");
}

std::string sidecar_path(const std::string& path) { return path + ".provenance.json"; }

void write_theory(const TheoryDensity& t, const std::string& path) {
  write_density(t.joint, path);
  json side = {{"provenance", to_string(t.provenance.kind)},
               {"n_experiments", t.provenance.n_experiments}};
  const Density ni = noninformative(t.mu.grid_ptr());
  const auto mv = t.mu.values();
  if (std::equal(mv.begin(), mv.end(), ni.values().begin())) {
    side["mu"] = "noninformative";
  } else if (std::all_of(mv.begin(), mv.end(), [](double v) { return v == 1.0; })) {
    side["mu"] = "constant";
  } else {
    side["mu"] = density_to_json(t.mu);
  }
  write_json(side, sidecar_path(path));
}

TheoryDensity read_theory(const std::string& path) {
  const Density joint = read_density(path);
  std::ifstream probe(sidecar_path(path));
  if (!probe) {
    return TheoryDensity(joint, noninformative(joint.grid_ptr()).relabeled(joint.frame()),
                         {ProvenanceKind::analytic, 0});
  }
  const json side = read_json(sidecar_path(path));
  const std::string where = "theory sidecar";
  Provenance prov{provenance_kind_from_string(field<std::string>(side, "provenance", where)),
                  side.contains("n_experiments")
                      ? field<std::size_t>(side, "n_experiments", where)
                      : std::size_t{0}};
  if (!side.contains("mu")) throw SchemaError(where + ": missing field 'mu'");
  const json& mj = side["mu"];
  if (mj.is_string()) {
    const auto kind = mj.get<std::string>();
    if (kind == "noninformative") {
      return TheoryDensity(joint, noninformative(joint.grid_ptr()).relabeled(joint.frame()),
                           prov);
    }
    if (kind == "constant") {
      return TheoryDensity(joint, Density::constant(joint.grid_ptr(), 1.0, joint.frame()), prov);
    }
    throw SchemaError(where + ": unknown mu '" + kind + "'");
  }
  Density mu = density_from_json(mj);
  if (!(mu.grid() == joint.grid())) throw SchemaError(where + ": mu lives on another grid");
  return TheoryDensity(joint, Density(joint.grid_ptr(), {mu.values().begin(), mu.values().end()},
                                      joint.frame()),
                       prov);
}

MeasurementModel parse_measurement(const std::string& text) {
  const auto parts = split(text, ':');
  const std::string where = "measurement '" + text + "'";
  if (parts.size() < 2 || parts[0].empty()) {
    throw ConfigInvalid(where + ": expected axis:kind:center:width");
  }
  MeasurementModel m;
  m.parameter = parts[0];
  m.kind = measurement_kind_from_string(parts[1]);
  if (m.kind == MeasurementKind::noninformative) {
    if (parts.size() != 2 && parts.size() != 4) {
      throw ConfigInvalid(where + ": expected axis:noninformative");
    }
    return m;
  }
  if (parts.size() != 4) throw ConfigInvalid(where + ": expected axis:kind:center:width");
  m.center = parse_number(parts[2], where + " center");
  m.width = parse_number(parts[3], where + " width");
  if (!(m.width > 0.0)) throw ConfigInvalid(where + ": width must be positive");
  return m;
}

MeasurementModel measurement_from_json(const json& j) {
  if (j.is_string()) return parse_measurement(j.get<std::string>());
  const std::string where = "measurement";
  MeasurementModel m;
  try {
    m.parameter = field<std::string>(j, "parameter", where);
    m.kind = measurement_kind_from_string(field<std::string>(j, "kind", where));
    if (j.contains("center")) m.center = field<double>(j, "center", where);
    if (j.contains("width") && !j["width"].is_null()) m.width = field<double>(j, "width", where);
  } catch (const SchemaError& e) {
    throw ConfigInvalid(e.what());
  }
  return m;
}

json measurement_to_json(const MeasurementModel& m) {
  json j = {{"parameter", m.parameter}, {"kind", to_string(m.kind)}, {"center", m.center}};
  j["width"] = std::isinf(m.width) ? json(nullptr) : json(m.width);
  return j;
}

PriorSpec prior_from_json(const json& j) {
  const std::string where = "prior";
  PriorSpec spec;
  try {
    spec.kind = prior_kind_from_string(field<std::string>(j, "kind", where));
    if (j.contains("bounds")) {
      for (const json& b : j["bounds"]) {
        if (!b.is_array() || b.size() != 2) {
          throw ConfigInvalid(where + ": each bound must be [lower, upper]");
        }
        spec.bounds.push_back({b[0].get<double>(), b[1].get<double>()});
      }
    }
  } catch (const json::exception&) {
    throw ConfigInvalid(where + ": bounds must be numbers");
  } catch (const SchemaError& e) {
    throw ConfigInvalid(e.what());
  }
  return spec;
}

CoordinateMap parse_map(const std::string& text) {
  const auto parts = split(text, ':');
  const std::string where = "map '" + text + "'";
  if (parts.empty()) throw ConfigInvalid(where + ": empty");
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t k, double fallback) {
    return parts.size() > k ? parse_number(parts[k], where) : fallback;
  };
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() - 1 < lo || parts.size() - 1 > hi) {
      throw ConfigInvalid(where + ": wrong number of parameters");
    }
  };
  try {
    if (kind == "identity") return arity(0, 0), CoordinateMap::identity();
    if (kind == "reciprocal") return arity(0, 0), CoordinateMap::reciprocal();
    if (kind == "log") return arity(0, 1), CoordinateMap::log(arg(1, 1.0));
    if (kind == "exp") return arity(0, 1), CoordinateMap::exp(arg(1, 1.0));
    if (kind == "affine") return arity(2, 2), CoordinateMap::affine(arg(1, 1.0), arg(2, 0.0));
    if (kind == "power") return arity(1, 1), CoordinateMap::power(arg(1, 1.0));
  } catch (const DomainMismatch& e) {
    throw ConfigInvalid(where + ": " + e.what());
  }
  throw ConfigInvalid(where + ": unknown map kind '" + kind + "'");
}

Map2D parse_map2d(const std::string& text) {
  if (text == "multiplicative_shear") return Map2D::multiplicative_shear();
  if (text.rfind("shear:", 0) == 0) {
    return Map2D::shear(parse_number(text.substr(6), "map '" + text + "'"));
  }
  const auto parts = split(text, ',');
  if (parts.size() != 2) {
    throw ConfigInvalid("map '" + text + "': expected a 2D map or two 1D maps joined by ','");
  }
  return Map2D::product(parse_map(parts[0]), parse_map(parts[1]));
}

CoordinateMap map_from_json(const json& j) {
  if (j.is_string()) return parse_map(j.get<std::string>());
  try {
    std::string spec = field<std::string>(j, "kind", "map");
    if (j.contains("parameters")) {
      for (const json& p : j["parameters"]) {
        std::ostringstream s;
        s.precision(17);
        s << p.get<double>();
        spec += ":" + s.str();
      }
    }
    return parse_map(spec);
  } catch (const json::exception&) {
    throw ConfigInvalid("map: parameters must be numbers");
  } catch (const SchemaError& e) {
    throw ConfigInvalid(e.what());
  }
}

GridPtr parse_grid(const std::string& text, const FallingBodyLaw& law,
                   std::size_t nodes_per_decade) {
  if (text == "default") return default_fall_grid(law, nodes_per_decade);
  if (text.find(':') == std::string::npos) {
    try {
      return grid_from_json(read_json(text));
    } catch (const SchemaError& e) {
      throw ConfigInvalid(std::string("grid file: ") + e.what());
    }
  }
  std::vector<Axis> axes;
  for (const std::string& spec : split(text, ',')) {
    const auto p = split(spec, ':');
    const std::string where = "grid axis '" + spec + "'";
    if (p.size() != 5) throw ConfigInvalid(where + ": expected name:spacing:lower:upper:count");
    const double count = parse_number(p[4], where + " count");
    if (!(count >= 2.0) || count != std::floor(count)) {
      throw ConfigInvalid(where + ": count must be an integer >= 2");
    }
    try {
      axes.emplace_back(p[0], spacing_from_string(p[1]), parse_number(p[2], where),
                        parse_number(p[3], where), static_cast<std::size_t>(count));
    } catch (const InvalidAxis& e) {
      throw ConfigInvalid(where + ": " + e.what());
    }
  }
  if (axes.size() == 1) return make_grid(axes[0]);
  if (axes.size() == 2) return make_grid(axes[0], axes[1]);
  throw ConfigInvalid("grid '" + text + "': need 1 or 2 axes");
}

json summary_to_json(const Summary& s) {
  json j = {{"axis", s.axis},
            {"mean", s.mean},
            {"mode", s.mode},
            {"central68", {s.central68.lower, s.central68.upper}},
            {"central95", {s.central95.lower, s.central95.upper}}};
  if (s.log_frame_mode) j["log_frame_mode"] = *s.log_frame_mode;
  if (s.geometric_mean) j["geometric_mean"] = *s.geometric_mean;
  return j;
}

json posterior_to_json(const Posterior& p) {
  json summaries = json::array();
  for (const auto& s : p.summaries) summaries.push_back(summary_to_json(s));
  return {{"frame", p.density.frame()},
          {"raw_mass", total_mass(p.raw)},
          {"summaries", summaries}};
}

json axiom_report_to_json(const AxiomReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"axiom", c.axiom},
                      {"passed", c.passed},
                      {"max_discrepancy", c.max_discrepancy},
                      {"failures", c.failures}});
  }
  return {{"realization", r.realization},
          {"samples", r.samples},
          {"all_passed", r.all_passed()},
          {"checks", checks}};
}

json paradox_report_to_json(const ParadoxReport& r) {
  json sweep = json::array();
  for (const auto& w : r.sweep) {
    sweep.push_back({{"cells", w.cells},
                     {"half_width", w.half_width},
                     {"tv_to_conditional", w.tv_to_conditional}});
  }
  return {{"tv_conditionals", r.tv_conditionals}, {"tv_and", r.tv_and}, {"width_sweep", sweep}};
}

}  // namespace infspace::io
