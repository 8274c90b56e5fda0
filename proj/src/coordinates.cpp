#include "infspace/coordinates.hpp"

#include <algorithm>
#include <cmath>

#include "infspace/algebra.hpp"
#include "infspace/error.hpp"

namespace infspace {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const Interval kPositive{0.0, kInf};
const Interval kReal{-kInf, kInf};

// Relative slack when checking that an image fits a target box.
constexpr double kBoxSlack = 1e-9;

}  // namespace

std::string to_string(MapKind kind) {
  switch (kind) {
    case MapKind::affine: return "affine";
    case MapKind::log: return "log";
    case MapKind::exp: return "exp";
    case MapKind::reciprocal: return "reciprocal";
    case MapKind::power: return "power";
    case MapKind::composed: return "composed";
  }
  return "unknown";
}

CoordinateMap::CoordinateMap(MapKind kind, std::vector<double> parameters, Fn forward,
                             Fn inverse, Fn jacobian, Interval domain, bool increasing)
    : kind_(kind),
      parameters_(std::move(parameters)),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      jacobian_(std::move(jacobian)),
      domain_(domain),
      increasing_(increasing) {}

CoordinateMap CoordinateMap::affine(double a, double b) {
  if (!(a != 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainMismatch("affine map needs finite a != 0 and finite b");
  }
  return CoordinateMap(
      MapKind::affine, {a, b}, [a, b](double x) { return a * x + b; },
      [a, b](double y) { return (y - b) / a; },
      [a](double) { return std::abs(a); }, kReal, a > 0.0);
}

CoordinateMap CoordinateMap::log(double x0) {
  if (!(x0 > 0.0) || !std::isfinite(x0)) {
    throw DomainMismatch("log map needs a finite reference x0 > 0");
  }
  return CoordinateMap(
      MapKind::log, {x0}, [x0](double x) { return std::log(x / x0); },
      [x0](double y) { return x0 * std::exp(y); }, [](double x) { return 1.0 / x; },
      kPositive, true);
}

CoordinateMap CoordinateMap::exp(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainMismatch("exp map needs a finite scale > 0");
  }
  return CoordinateMap(
      MapKind::exp, {scale}, [scale](double x) { return scale * std::exp(x); },
      [scale](double y) { return std::log(y / scale); },
      [scale](double x) { return scale * std::exp(x); }, kReal, true);
}

CoordinateMap CoordinateMap::reciprocal() {
  return CoordinateMap(
      MapKind::reciprocal, {}, [](double x) { return 1.0 / x; },
      [](double y) { return 1.0 / y; }, [](double x) { return 1.0 / (x * x); },
      kPositive, false);
}

CoordinateMap CoordinateMap::power(double a) {
  if (!(a != 0.0) || !std::isfinite(a)) {
    throw DomainMismatch("power map needs a finite exponent a != 0");
  }
  return CoordinateMap(
      MapKind::power, {a}, [a](double x) { return std::pow(x, a); },
      [a](double y) { return std::pow(y, 1.0 / a); },
      [a](double x) { return std::abs(a) * std::pow(x, a - 1.0); }, kPositive, a > 0.0);
}

Interval CoordinateMap::image(const Interval& source) const {
  const double a = forward(source.lower);
  const double b = forward(source.upper);
  return {std::min(a, b), std::max(a, b)};
}

CoordinateMap CoordinateMap::restricted(double lower, double upper) const {
  if (!(lower < upper) || !domain_.contains(Interval{lower, upper})) {
    throw DomainMismatch("restriction [" + std::to_string(lower) + ", " +
                         std::to_string(upper) + "] is not inside the map's domain");
  }
  CoordinateMap m = *this;
  m.domain_ = {lower, upper};
  return m;
}

CoordinateMap compose(const CoordinateMap& outer, const CoordinateMap& inner) {
  const Interval inner_range = inner.range();
  if (!outer.domain().contains(inner_range)) {
    throw DomainMismatch("compose: range of the inner map is not inside the domain of "
                         "the outer map");
  }
  const Interval domain = inner.domain();
  auto restrict_to = [&](CoordinateMap m) {
    if (m.domain().lower == domain.lower && m.domain().upper == domain.upper) return m;
    return m.restricted(domain.lower, domain.upper);
  };

  const auto& po = outer.parameters();
  const auto& pi = inner.parameters();
  const MapKind ko = outer.kind();
  const MapKind ki = inner.kind();
  if (ko == MapKind::affine && ki == MapKind::affine) {
    return restrict_to(CoordinateMap::affine(po[0] * pi[0], po[0] * pi[1] + po[1]));
  }
  if (ko == MapKind::reciprocal && ki == MapKind::reciprocal) {
    return restrict_to(CoordinateMap::identity());
  }
  if (ko == MapKind::log && ki == MapKind::exp) {
    return restrict_to(CoordinateMap::affine(1.0, std::log(pi[0] / po[0])));
  }
  if (ko == MapKind::exp && ki == MapKind::log) {
    return restrict_to(CoordinateMap::affine(po[0] / pi[0], 0.0));
  }
  if (ko == MapKind::power && ki == MapKind::power) {
    return restrict_to(CoordinateMap::power(po[0] * pi[0]));
  }

  auto o = std::make_shared<const CoordinateMap>(outer);
  auto i = std::make_shared<const CoordinateMap>(inner);
  CoordinateMap m(
      MapKind::composed, {}, [o, i](double x) { return o->forward(i->forward(x)); },
      [o, i](double y) { return i->inverse(o->inverse(y)); },
      [o, i](double x) { return o->jacobian(i->forward(x)) * i->jacobian(x); }, domain,
      outer.increasing() == inner.increasing());
  m.outer_ = std::move(o);
  m.inner_ = std::move(i);
  return m;
}

Map2D::Map2D(std::string name, PointFn forward, PointFn inverse, ScalarFn jacobian,
             bool affine)
    : name_(std::move(name)),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      jacobian_(std::move(jacobian)),
      affine_(affine) {}

Map2D Map2D::product(CoordinateMap first, CoordinateMap second) {
  const bool affine = first.kind() == MapKind::affine && second.kind() == MapKind::affine;
  Map2D m(
      "product",
      [first, second](const Point& p) {
        return Point{first.forward(p[0]), second.forward(p[1])};
      },
      [first, second](const Point& p) {
        return Point{first.inverse(p[0]), second.inverse(p[1])};
      },
      [first, second](const Point& p) { return first.jacobian(p[0]) * second.jacobian(p[1]); },
      affine);
  m.factors_ = {std::move(first), std::move(second)};
  return m;
}

Map2D Map2D::shear(double k) {
  if (!std::isfinite(k)) throw DomainMismatch("shear coefficient must be finite");
  Map2D m(
      "shear", [k](const Point& p) { return Point{p[0], p[1] + k * p[0]}; },
      [k](const Point& p) { return Point{p[0], p[1] - k * p[0]}; },
      [](const Point&) { return 1.0; }, true);
  m.parameters_ = {k};
  return m;
}

Map2D Map2D::multiplicative_shear() {
  return Map2D(
      "multiplicative_shear", [](const Point& p) { return Point{p[0], p[0] * p[1]}; },
      [](const Point& p) { return Point{p[0], p[1] / p[0]}; },
      [](const Point& p) { return std::abs(p[0]); }, false);
}

Map2D Map2D::custom(std::string name, PointFn forward, PointFn inverse, ScalarFn jacobian,
                    bool affine) {
  return Map2D(std::move(name), std::move(forward), std::move(inverse),
               std::move(jacobian), affine);
}

namespace {

bool fits(const Axis& axis, double x) {
  const double slack = kBoxSlack * axis.span();
  return x >= axis.lower() - slack && x <= axis.upper() + slack;
}

double pulled_back_value(double value_at_preimage, double jacobian) {
  if (value_at_preimage == 0.0) return 0.0;
  if (!(jacobian > 0.0) || !std::isfinite(jacobian)) {
    throw SingularJacobian("push_forward: Jacobian vanishes or is not finite");
  }
  return value_at_preimage / jacobian;
}

}  // namespace

Density push_forward(const Density& d, const CoordinateMap& map, const GridPtr& target,
                     const Tolerances& tol) {
  if (d.dimension() != 1 || target->dimension() != 1) {
    throw InvalidGrid("1D push_forward needs 1D source and target grids");
  }
  const Axis& src = d.grid().axis(0);
  const Axis& dst = target->axis(0);
  if (!map.domain().contains(Interval{src.lower(), src.upper()})) {
    throw DomainMismatch("push_forward: map is not defined on the whole source box");
  }
  const Interval img = map.image({src.lower(), src.upper()});
  if (!fits(dst, img.lower) || !fits(dst, img.upper)) {
    throw DomainMismatch("push_forward: image of the source box [" +
                         std::to_string(img.lower) + ", " + std::to_string(img.upper) +
                         "] does not fit the target box");
  }
  std::vector<double> out(dst.count());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double x = map.inverse(dst.node(j));
    const double p = std::isfinite(x) ? evaluate_or_zero(d, Point{x, 0.0}, tol) : 0.0;
    out[j] = p == 0.0 ? 0.0 : pulled_back_value(p, map.jacobian(x));
  }
  return Density(target, std::move(out));
}

Density push_forward(const Density& d, const Map2D& map, const GridPtr& target,
                     const Tolerances& tol) {
  if (d.dimension() != 2 || target->dimension() != 2) {
    throw InvalidGrid("2D push_forward needs 2D source and target grids");
  }
  const Axis& sx = d.grid().axis(0);
  const Axis& sy = d.grid().axis(1);
  const Axis& tu = target->axis(0);
  const Axis& tv = target->axis(1);

  // Image of the source boundary must fit in the target box.
  constexpr int kSamples = 257;
  for (int s = 0; s < kSamples; ++s) {
    const double t = static_cast<double>(s) / (kSamples - 1);
    const double x = sx.lower() + t * sx.span();
    const double y = sy.lower() + t * sy.span();
    for (const Point& p : {Point{x, sy.lower()}, Point{x, sy.upper()},
                           Point{sx.lower(), y}, Point{sx.upper(), y}}) {
      const Point img = map.forward(p);
      if (!std::isfinite(img[0]) || !std::isfinite(img[1])) {
        throw DomainMismatch("push_forward: map is not defined on the whole source box");
      }
      if (!fits(tu, img[0]) || !fits(tv, img[1])) {
        throw DomainMismatch("push_forward: image of the source box does not fit the "
                             "target box");
      }
    }
  }

  std::vector<double> out(target->size());
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = pushed_value(d, map, target->coordinates(n), tol);
  }
  return Density(target, std::move(out));
}

double pushed_value(const Density& d, const Map2D& map, const Point& target,
                    const Tolerances& tol) {
  const Point x = map.inverse(target);
  if (!std::isfinite(x[0]) || !std::isfinite(x[1])) return 0.0;
  const double p = evaluate_or_zero(d, x, tol);
  return p == 0.0 ? 0.0 : pulled_back_value(p, map.jacobian(x));
}

Axis image_axis(const Axis& axis, const CoordinateMap& map, std::string name) {
  if (!map.domain().contains(Interval{axis.lower(), axis.upper()})) {
    throw DomainMismatch("image_axis: map is not defined on the whole axis");
  }
  const Interval img = map.image({axis.lower(), axis.upper()});
  const bool log_source = axis.spacing() == Spacing::logarithmic;
  Spacing spacing = axis.spacing();
  switch (map.kind()) {
    case MapKind::log:
      spacing = Spacing::linear;
      break;
    case MapKind::exp:
      spacing = Spacing::logarithmic;
      break;
    case MapKind::reciprocal:
    case MapKind::power:
      spacing = Spacing::logarithmic;
      break;
    case MapKind::affine: {
      const auto& a = map.parameters();
      if (log_source && !(a[1] == 0.0 && a[0] > 0.0)) spacing = Spacing::linear;
      break;
    }
    case MapKind::composed:
      spacing = img.lower > 0.0 && log_source ? Spacing::logarithmic : Spacing::linear;
      break;
  }
  if (spacing == Spacing::logarithmic && !(img.lower > 0.0)) spacing = Spacing::linear;
  return Axis(std::move(name), spacing, img.lower, img.upper, axis.count(), axis.units());
}

double max_relative_discrepancy(const Density& a, const Density& b) {
  require_compatible(a, b, "max_relative_discrepancy");
  double peak = 0.0;
  double diff = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    peak = std::max(peak, std::abs(a[n]));
    diff = std::max(diff, std::abs(a[n] - b[n]));
  }
  return peak > 0.0 ? diff / peak : diff;
}

namespace {

template <typename Map>
InvarianceReport check_invariance(const Density& p, const Density& q, const Density& mu,
                                  const Map& map, const GridPtr& target,
                                  const Tolerances& tol) {
  auto push = [&](const Density& d) { return push_forward(d, map, target, tol); };
  const Density pp = push(p);
  const Density pq = push(q);
  const Density pmu = push(mu);

  InvarianceReport report;
  report.or_discrepancy = max_relative_discrepancy(push(or_combine(p, q)), or_combine(pp, pq));
  report.and_discrepancy =
      max_relative_discrepancy(push(and_combine(p, q, mu)), and_combine(pp, pq, pmu));
  return report;
}

}  // namespace

InvarianceReport verify_invariance(const Density& p, const Density& q, const Density& mu,
                                   const CoordinateMap& map, const GridPtr& target,
                                   const Tolerances& tol) {
  return check_invariance(p, q, mu, map, target, tol);
}

InvarianceReport verify_invariance(const Density& p, const Density& q, const Density& mu,
                                   const Map2D& map, const GridPtr& target,
                                   const Tolerances& tol) {
  return check_invariance(p, q, mu, map, target, tol);
}

}  // namespace infspace
