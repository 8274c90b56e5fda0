#include "infspace/priors.hpp"

#include <algorithm>
#include <cmath>

#include "infspace/error.hpp"

namespace infspace {
namespace {

void check_interval(const Interval& b, PriorKind kind) {
  if (!std::isfinite(b.lower) || !std::isfinite(b.upper) || !(b.lower < b.upper)) {
    throw InvalidBounds("prior bounds must be finite with lower < upper");
  }
  if (kind == PriorKind::jeffreys_reciprocal && !(b.lower > 0.0)) {
    throw InvalidBounds("jeffreys prior needs a positive lower bound");
  }
  if (kind == PriorKind::spherical_position && !(b.lower >= 0.0)) {
    throw InvalidBounds("spherical prior needs nonnegative coordinates");
  }
}

std::vector<Interval> resolve_bounds(const PriorSpec& spec, const Grid& grid) {
  if (spec.bounds.empty()) {
    std::vector<Interval> out;
    for (const Axis& a : grid.axes()) out.push_back({a.lower(), a.upper()});
    for (const Interval& b : out) check_interval(b, spec.kind);
    return out;
  }
  if (spec.bounds.size() != grid.dimension()) {
    throw InvalidBounds("prior has " + std::to_string(spec.bounds.size()) +
                        " intervals for a grid of dimension " +
                        std::to_string(grid.dimension()));
  }
  for (std::size_t k = 0; k < spec.bounds.size(); ++k) {
    const Interval& b = spec.bounds[k];
    check_interval(b, spec.kind);
    const Axis& a = grid.axis(k);
    const double slack = a.span() * default_tolerances().domain_snap;
    if (b.lower < a.lower() - slack || b.upper > a.upper() + slack) {
      throw InvalidBounds("prior bounds exceed the grid box on axis '" + a.name() + "'");
    }
  }
  return spec.bounds;
}

double prior_value(PriorKind kind, std::size_t axis, double x) {
  switch (kind) {
    case PriorKind::jeffreys_reciprocal:
      return 1.0 / x;
    case PriorKind::uniform:
      return 1.0;
    case PriorKind::spherical_position:
      return axis == 0 ? x * x : std::sin(x);
  }
  return 0.0;
}

bool inside(const Interval& b, double x) {
  const double slack = (b.upper - b.lower) * default_tolerances().domain_snap;
  return x >= b.lower - slack && x <= b.upper + slack;
}

}  // namespace

std::string to_string(PriorKind kind) {
  switch (kind) {
    case PriorKind::jeffreys_reciprocal: return "jeffreys";
    case PriorKind::uniform: return "uniform";
    case PriorKind::spherical_position: return "spherical";
  }
  return "?";
}

PriorKind prior_kind_from_string(const std::string& text) {
  if (text == "jeffreys" || text == "jeffreys_reciprocal" || text == "reciprocal") {
    return PriorKind::jeffreys_reciprocal;
  }
  if (text == "uniform") return PriorKind::uniform;
  if (text == "spherical" || text == "spherical_position") {
    return PriorKind::spherical_position;
  }
  throw ConfigInvalid("unknown prior kind '" + text + "'");
}

Density make_prior(const PriorSpec& spec, const GridPtr& grid) {
  const auto bounds = resolve_bounds(spec, *grid);
  return Density::tabulate(grid, [&](const Point& p) {
    double v = 1.0;
    for (std::size_t k = 0; k < bounds.size(); ++k) {
      if (!inside(bounds[k], p[k])) return 0.0;
      v *= prior_value(spec.kind, k, p[k]);
    }
    return v;
  });
}

double noninformative_value(const Axis& axis, double x) {
  return axis.spacing() == Spacing::logarithmic ? 1.0 / x : 1.0;
}

Density noninformative(const GridPtr& grid) {
  return Density::tabulate(grid, [&](const Point& p) {
    double v = 1.0;
    for (std::size_t k = 0; k < grid->dimension(); ++k) {
      v *= noninformative_value(grid->axis(k), p[k]);
    }
    return v;
  });
}

std::string to_string(MeasurementKind kind) {
  switch (kind) {
    case MeasurementKind::gaussian: return "gaussian";
    case MeasurementKind::lognormal: return "lognormal";
    case MeasurementKind::boxcar: return "boxcar";
    case MeasurementKind::noninformative: return "noninformative";
  }
  return "?";
}

MeasurementKind measurement_kind_from_string(const std::string& text) {
  if (text == "gaussian" || text == "normal") return MeasurementKind::gaussian;
  if (text == "lognormal") return MeasurementKind::lognormal;
  if (text == "boxcar") return MeasurementKind::boxcar;
  if (text == "noninformative" || text == "none") return MeasurementKind::noninformative;
  throw ConfigInvalid("unknown measurement kind '" + text + "'");
}

std::vector<double> measurement_profile(const MeasurementModel& m, const Axis& axis) {
  const std::size_t n = axis.count();
  std::vector<double> out(n);
  const bool flat = m.kind == MeasurementKind::noninformative || std::isinf(m.width);
  if (!flat && !(m.width > 0.0)) {
    throw ModelAxisMismatch("measurement on '" + m.parameter + "': width must be positive");
  }
  if (flat) {
    for (std::size_t i = 0; i < n; ++i) out[i] = noninformative_value(axis, axis.node(i));
    return out;
  }
  switch (m.kind) {
    case MeasurementKind::gaussian: {
      if (axis.spacing() == Spacing::logarithmic) {
        throw ModelAxisMismatch("gaussian measurement on logarithmic axis '" + axis.name() +
                                "' would put mass on negative values");
      }
      const double s = 1.0 / (2.0 * m.width * m.width);
      for (std::size_t i = 0; i < n; ++i) {
        const double d = axis.node(i) - m.center;
        out[i] = std::exp(-d * d * s);
      }
      break;
    }
    case MeasurementKind::lognormal: {
      if (!(axis.lower() > 0.0) || !(m.center > 0.0)) {
        throw ModelAxisMismatch("lognormal measurement on '" + axis.name() +
                                "' needs a positive axis and center");
      }
      const double s = 1.0 / (2.0 * m.width * m.width);
      for (std::size_t i = 0; i < n; ++i) {
        const double x = axis.node(i);
        const double d = std::log(x / m.center);
        out[i] = std::exp(-d * d * s) / x;
      }
      break;
    }
    case MeasurementKind::boxcar: {
      const double lo = m.center - m.width;
      const double hi = m.center + m.width;
      bool any = false;
      for (std::size_t i = 0; i < n; ++i) {
        const double x = axis.node(i);
        const bool in = x >= lo && x <= hi;
        out[i] = in ? noninformative_value(axis, x) : 0.0;
        any = any || in;
      }
      // Narrower than a cell: keep the node closest to the center.
      if (!any && axis.contains(m.center)) {
        const std::size_t i = axis.nearest_node(m.center);
        out[i] = noninformative_value(axis, axis.node(i));
      }
      break;
    }
    case MeasurementKind::noninformative:
      break;
  }
  return out;
}

Density measurement_density(const MeasurementModel& m, const GridPtr& grid) {
  return measurement_density(std::vector<MeasurementModel>{m}, grid);
}

Density measurement_density(const std::vector<MeasurementModel>& models,
                            const GridPtr& grid) {
  const std::size_t dim = grid->dimension();
  std::vector<std::vector<double>> profiles(dim);
  std::vector<bool> seen(dim, false);
  for (const MeasurementModel& m : models) {
    std::size_t k = 0;
    try {
      k = grid->axis_index(m.parameter);
    } catch (const UnknownAxis&) {
      throw ModelAxisMismatch("measurement on '" + m.parameter + "': no such axis in the grid");
    }
    if (seen[k]) throw ModelAxisMismatch("two measurements on axis '" + m.parameter + "'");
    seen[k] = true;
    profiles[k] = measurement_profile(m, grid->axis(k));
  }
  for (std::size_t k = 0; k < dim; ++k) {
    if (!seen[k]) {
      profiles[k] = measurement_profile(MeasurementModel{}, grid->axis(k));
    }
  }
  if (dim == 1) return Density(grid, std::move(profiles[0]));
  const std::size_t n0 = profiles[0].size();
  const std::size_t n1 = profiles[1].size();
  std::vector<double> values(n0 * n1);
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) values[i * n1 + j] = profiles[0][i] * profiles[1][j];
  }
  return Density(grid, std::move(values));
}

std::array<double, 9> benford_digit_probabilities() {
  std::array<double, 9> p{};
  for (int n = 1; n <= 9; ++n) p[n - 1] = std::log10(n + 1.0) - std::log10(static_cast<double>(n));
  return p;
}

std::vector<Point> sample_prior(const PriorSpec& spec, std::size_t n, Rng& rng) {
  if (spec.bounds.empty() || spec.bounds.size() > 2) {
    throw InvalidBounds("sampling a prior needs one or two explicit intervals");
  }
  for (const Interval& b : spec.bounds) check_interval(b, spec.kind);

  std::vector<Point> out(n, Point{0.0, 0.0});
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < spec.bounds.size(); ++k) {
      const Interval& b = spec.bounds[k];
      const double u = rng.uniform();
      double x = 0.0;
      switch (spec.kind) {
        case PriorKind::jeffreys_reciprocal:
          x = b.lower * std::exp(u * std::log(b.upper / b.lower));
          break;
        case PriorKind::uniform:
          x = b.lower + u * (b.upper - b.lower);
          break;
        case PriorKind::spherical_position:
          if (k == 0) {
            const double a3 = b.lower * b.lower * b.lower;
            const double b3 = b.upper * b.upper * b.upper;
            x = std::cbrt(a3 + u * (b3 - a3));
          } else {
            const double c0 = std::cos(b.lower);
            const double c1 = std::cos(b.upper);
            x = std::acos(c0 - u * (c0 - c1));
          }
          break;
      }
      out[s][k] = std::min(std::max(x, b.lower), b.upper);
    }
  }
  return out;
}

std::vector<Point> sample_prior(const PriorSpec& spec, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_prior(spec, n, rng);
}

int first_digit(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw OutOfDomain("first_digit needs a positive finite number");
  }
  double m = x / std::pow(10.0, std::floor(std::log10(x)));
  int d = static_cast<int>(m);
  if (d < 1) d = 1;
  if (d > 9) d = 9;
  return d;
}

std::array<double, 9> first_digit_frequencies(const std::vector<Point>& samples) {
  std::array<double, 9> f{};
  if (samples.empty()) return f;
  std::array<std::size_t, 9> counts{};
  for (const Point& p : samples) ++counts[first_digit(p[0]) - 1];
  for (int d = 0; d < 9; ++d) {
    f[d] = static_cast<double>(counts[d]) / static_cast<double>(samples.size());
  }
  return f;
}

}  // namespace infspace
