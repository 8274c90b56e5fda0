#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "infspace/grid.hpp"
#include "infspace/tolerances.hpp"

namespace infspace {

/// Nonnegative node values on a grid, read as a probability density with
/// respect to the grid's coordinates (not a volumetric probability: a change
/// of variables multiplies the values by the Jacobian). The total mass need
/// not be one. Immutable once constructed.
class Density {
 public:
  /// Throws InvalidDensity on size mismatch or on negative / NaN values.
  /// An empty `frame` defaults to the grid's axis names.
  Density(GridPtr grid, std::vector<double> values, std::string frame = {},
          bool normalized = false);

  /// Samples `f` at every node.
  static Density tabulate(GridPtr grid, const std::function<double(const Point&)>& f,
                          std::string frame = {});
  static Density constant(GridPtr grid, double value, std::string frame = {});

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t dimension() const { return grid_->dimension(); }
  std::size_t size() const { return values_.size(); }

  std::span<const double> values() const { return values_; }
  double operator[](std::size_t flat) const { return values_[flat]; }
  double at(std::size_t i, std::size_t j = 0) const {
    return values_[grid_->flat_index(i, j)];
  }

  const std::string& frame() const { return frame_; }
  bool normalized() const { return normalized_; }

  /// Same values, different frame label.
  Density relabeled(std::string frame) const;
  Density with_values(std::vector<double> values, bool normalized = false) const;

  /// Same grid (by value) and same frame.
  bool compatible_with(const Density& other) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
  std::string frame_;
  bool normalized_;
};

/// Throws GridMismatch unless `a` and `b` share grid and frame.
void require_compatible(const Density& a, const Density& b, const char* operation);

using NodePredicate = std::function<bool(const Point&)>;

/// Mass of the nodes selected by `region`: sum of value * weight.
double integrate(const Density& d, const NodePredicate& region);
double total_mass(const Density& d);

/// Rescales to unit mass. Throws NonFinite or ZeroMass.
Density normalize(const Density& d, const Tolerances& tol = default_tolerances());

/// Integrates a 2D density over the axis that is not `keep`.
Density marginalize(const Density& d, const std::string& keep);

/// Linear (1D) or bilinear (2D) interpolation in the grid coordinates; exact
/// at nodes. Throws OutOfDomain outside the box.
double evaluate(const Density& d, const Point& point,
                const Tolerances& tol = default_tolerances());
double evaluate(const Density& d, double x, const Tolerances& tol = default_tolerances());

/// Same as evaluate() but returns 0 outside the box: densities vanish
/// beyond their truncation box.
double evaluate_or_zero(const Density& d, const Point& point,
                        const Tolerances& tol = default_tolerances());

/// Values and mass of the 1D slice of a 2D density at `value` on `fixed_axis`,
/// interpolated between the two neighbouring rows/columns.
Density slice(const Density& d, const std::string& fixed_axis, double value,
              const Tolerances& tol = default_tolerances());

/// Index of the largest value.
std::size_t argmax(const Density& d);

}  // namespace infspace
