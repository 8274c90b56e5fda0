#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infspace/tolerances.hpp"

namespace infspace {

enum class Spacing { linear, logarithmic };

std::string to_string(Spacing spacing);
Spacing spacing_from_string(const std::string& text);

/// A coordinate in a 1D or 2D parameter space. Unused trailing components
/// are ignored.
using Point = std::array<double, 2>;

/// Position of a coordinate inside an axis: the cell [node(index),
/// node(index + 1)] and the linear fraction within it.
struct CellLocation {
  std::size_t index = 0;
  double fraction = 0.0;
};

/// One discretized parameter axis.
///
/// Nodes are equally spaced in the coordinate itself (linear) or in its
/// logarithm (logarithmic); the last node is exactly `upper`. Quadrature is
/// node-centered and cell-wise: on linear axes each cell contributes the
/// trapezoid rule, on logarithmic axes each cell uses the two-point rule that
/// is exact for both constants and 1/x. Node weights are the sums of the
/// cell weights that touch the node.
class Axis {
 public:
  Axis(std::string name, Spacing spacing, double lower, double upper,
       std::size_t count, std::string units = {});

  static Axis linear(std::string name, double lower, double upper,
                     std::size_t count, std::string units = {});
  static Axis logarithmic(std::string name, double lower, double upper,
                          std::size_t count, std::string units = {});

  const std::string& name() const { return name_; }
  Spacing spacing() const { return spacing_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  std::size_t count() const { return count_; }
  const std::string& units() const { return units_; }

  /// Node step: in the coordinate (linear) or in its natural log.
  double step() const { return step_; }
  double span() const { return upper_ - lower_; }

  double node(std::size_t i) const { return nodes_[i]; }
  const std::vector<double>& nodes() const { return nodes_; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

  /// Quadrature weights of the two end nodes of cell `c`.
  std::pair<double, double> cell_weights(std::size_t c) const {
    return cell_weights_[c];
  }

  /// Locates `x`; points within `snap * span()` outside the box are clamped
  /// onto the face. Returns nullopt for points outside the box.
  std::optional<CellLocation> locate(double x, double snap) const;

  /// Index of the node closest to `x` (in the axis' natural spacing).
  std::size_t nearest_node(double x) const;

  bool contains(double x, double snap = 0.0) const;

  friend bool operator==(const Axis& a, const Axis& b);

 private:
  std::string name_;
  Spacing spacing_;
  double lower_;
  double upper_;
  std::size_t count_;
  std::string units_;
  double step_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<std::pair<double, double>> cell_weights_;
};

/// Rectangular tensor-product grid over one or two axes. Node storage is
/// row-major: the flat index of node (i, j) is i * axis(1).count() + j.
class Grid {
 public:
  explicit Grid(Axis axis);
  Grid(Axis first, Axis second);

  std::size_t dimension() const { return axes_.size(); }
  std::size_t size() const { return size_; }
  const Axis& axis(std::size_t k) const { return axes_[k]; }
  const std::vector<Axis>& axes() const { return axes_; }

  /// Position of the axis named `name`; throws UnknownAxis.
  std::size_t axis_index(const std::string& name) const;
  bool has_axis(const std::string& name) const;

  std::size_t flat_index(std::size_t i, std::size_t j = 0) const {
    return dimension() == 1 ? i : i * axes_[1].count() + j;
  }
  std::array<std::size_t, 2> node_indices(std::size_t flat) const;
  Point coordinates(std::size_t flat) const;
  double weight(std::size_t flat) const;

  /// Coordinate volume of the box.
  double volume() const;

  /// Default frame label: the axis names joined by ','.
  std::string default_frame() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.axes_ == b.axes_;
  }

 private:
  std::vector<Axis> axes_;
  std::size_t size_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(Axis axis);
GridPtr make_grid(Axis first, Axis second);

}  // namespace infspace
