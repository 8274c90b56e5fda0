#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "infspace/density.hpp"

namespace infspace {

struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x >= lower && x <= upper; }
  bool contains(const Interval& other) const {
    return other.lower >= lower && other.upper <= upper;
  }
};

enum class MapKind { affine, log, exp, reciprocal, power, composed };

std::string to_string(MapKind kind);

/// A monotone change of variables y = f(x) on an interval, with analytic
/// inverse and Jacobian. `jacobian(x)` is |dy/dx| evaluated at the source
/// point.
class CoordinateMap {
 public:
  /// y = a x + b, a != 0.
  static CoordinateMap affine(double a, double b);
  static CoordinateMap identity() { return affine(1.0, 0.0); }
  /// y = log(x / x0), x0 > 0: the logarithmic (Cartesian) variable.
  static CoordinateMap log(double x0 = 1.0);
  /// y = scale * exp(x), scale > 0; inverse of log(scale).
  static CoordinateMap exp(double scale = 1.0);
  /// y = 1 / x on x > 0 (period <-> frequency).
  static CoordinateMap reciprocal();
  /// y = x^a on x > 0, a != 0.
  static CoordinateMap power(double a);

  MapKind kind() const { return kind_; }
  /// Kind-specific parameters: affine {a, b}; log {x0}; exp {scale};
  /// power {a}; reciprocal and composed {}.
  const std::vector<double>& parameters() const { return parameters_; }

  double forward(double x) const { return forward_(x); }
  double inverse(double y) const { return inverse_(y); }
  double jacobian(double x) const { return jacobian_(x); }

  const Interval& domain() const { return domain_; }
  /// Image of the domain.
  Interval range() const { return image(domain_); }
  Interval image(const Interval& source) const;
  bool increasing() const { return increasing_; }

  /// Same map on a sub-interval of its domain. Throws DomainMismatch if the
  /// interval is not inside the domain.
  CoordinateMap restricted(double lower, double upper) const;

  /// For composed maps: the outer and inner factors; empty otherwise.
  const std::shared_ptr<const CoordinateMap>& outer() const { return outer_; }
  const std::shared_ptr<const CoordinateMap>& inner() const { return inner_; }

  friend CoordinateMap compose(const CoordinateMap& outer, const CoordinateMap& inner);

 private:
  using Fn = std::function<double(double)>;
  CoordinateMap(MapKind kind, std::vector<double> parameters, Fn forward, Fn inverse,
                Fn jacobian, Interval domain, bool increasing);

  MapKind kind_;
  std::vector<double> parameters_;
  Fn forward_;
  Fn inverse_;
  Fn jacobian_;
  Interval domain_;
  bool increasing_;
  std::shared_ptr<const CoordinateMap> outer_;
  std::shared_ptr<const CoordinateMap> inner_;
};

/// outer o inner, i.e. x -> outer(inner(x)). Closed forms are returned where
/// the composition stays in a named family (affine o affine,
/// reciprocal o reciprocal, log o exp, exp o log, power o power).
/// Throws DomainMismatch unless range(inner) lies in domain(outer).
CoordinateMap compose(const CoordinateMap& outer, const CoordinateMap& inner);

/// A diffeomorphism of the plane, (x, y) -> (u, v), given by forward and
/// inverse maps and the absolute Jacobian determinant |d(u,v)/d(x,y)| at the
/// source point.
class Map2D {
 public:
  using PointFn = std::function<Point(const Point&)>;
  using ScalarFn = std::function<double(const Point&)>;

  /// Independent 1D maps on each axis.
  static Map2D product(CoordinateMap first, CoordinateMap second);
  /// (x, y) -> (x, y + k x).
  static Map2D shear(double k);
  /// (x, y) -> (x, x y) on x > 0; nonlinear.
  static Map2D multiplicative_shear();
  static Map2D custom(std::string name, PointFn forward, PointFn inverse,
                      ScalarFn jacobian, bool affine = false);

  const std::string& name() const { return name_; }
  Point forward(const Point& p) const { return forward_(p); }
  Point inverse(const Point& p) const { return inverse_(p); }
  double jacobian(const Point& source) const { return jacobian_(source); }
  bool affine() const { return affine_; }

  /// Shear coefficient for shear(); factors for product().
  const std::vector<double>& parameters() const { return parameters_; }
  const std::vector<CoordinateMap>& factors() const { return factors_; }

 private:
  Map2D(std::string name, PointFn forward, PointFn inverse, ScalarFn jacobian,
        bool affine);

  std::string name_;
  PointFn forward_;
  PointFn inverse_;
  ScalarFn jacobian_;
  bool affine_;
  std::vector<double> parameters_;
  std::vector<CoordinateMap> factors_;
};

/// Axis covering the image of `axis` under `map`, with the same node count.
/// The spacing is chosen so that nodes map onto nodes whenever the map
/// allows it: log maps give linear axes, exp maps logarithmic ones,
/// reciprocal and power maps keep logarithmic spacing, positive scalings
/// keep the source spacing.
Axis image_axis(const Axis& axis, const CoordinateMap& map, std::string name);

/// Change of variables q(y) = p(x(y)) |dx/dy|, sampled at the target nodes by
/// pulling each node back and interpolating p there. Target nodes whose
/// preimage lies outside the source box get 0.
/// Throws DomainMismatch when the map is undefined on the source box or the
/// image of the source box does not fit in the target box, and
/// SingularJacobian on a vanishing or non-finite Jacobian.
Density push_forward(const Density& d, const CoordinateMap& map, const GridPtr& target,
                     const Tolerances& tol = default_tolerances());
Density push_forward(const Density& d, const Map2D& map, const GridPtr& target,
                     const Tolerances& tol = default_tolerances());

/// Pushed density evaluated at an arbitrary target point (0 outside the
/// image of the source box).
double pushed_value(const Density& d, const Map2D& map, const Point& target,
                    const Tolerances& tol = default_tolerances());

struct InvarianceReport {
  /// max |push(p or q) - (push p or push q)| / max |push(p or q)|
  double or_discrepancy = 0.0;
  /// Same for AND, with mu pushed alongside p and q.
  double and_discrepancy = 0.0;

  double max() const { return or_discrepancy > and_discrepancy ? or_discrepancy : and_discrepancy; }
};

/// Checks that OR and AND commute with the change of variables.
InvarianceReport verify_invariance(const Density& p, const Density& q, const Density& mu,
                                   const CoordinateMap& map, const GridPtr& target,
                                   const Tolerances& tol = default_tolerances());
InvarianceReport verify_invariance(const Density& p, const Density& q, const Density& mu,
                                   const Map2D& map, const GridPtr& target,
                                   const Tolerances& tol = default_tolerances());

/// max |a - b| / max |a|, on compatible densities.
double max_relative_discrepancy(const Density& a, const Density& b);

}  // namespace infspace
