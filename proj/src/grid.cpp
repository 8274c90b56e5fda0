#include "infspace/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infspace/error.hpp"

namespace infspace {
namespace {

// h + expm1(-h) and expm1(h) - h, both ~h^2/2 for small h; the series avoids
// the cancellation of the direct forms on fine grids.
double shifted_expm1_neg(double h) {
  if (h > 0.5) return h + std::expm1(-h);
  double term = h * h / 2.0;
  double sum = 0.0;
  for (int k = 2; k < 40 && std::abs(term) > 1e-300; ++k) {
    sum += term;
    term *= -h / (k + 1);
  }
  return sum;
}

double shifted_expm1_pos(double h) {
  if (h > 0.5) return std::expm1(h) - h;
  double term = h * h / 2.0;
  double sum = 0.0;
  for (int k = 2; k < 40 && term > 1e-300; ++k) {
    sum += term;
    term *= h / (k + 1);
  }
  return sum;
}

}  // namespace

std::string to_string(Spacing spacing) {
  return spacing == Spacing::linear ? "linear" : "logarithmic";
}

Spacing spacing_from_string(const std::string& text) {
  if (text == "linear" || text == "lin") return Spacing::linear;
  if (text == "logarithmic" || text == "log") return Spacing::logarithmic;
  throw InvalidAxis("unknown axis spacing '" + text + "'");
}

Axis::Axis(std::string name, Spacing spacing, double lower, double upper,
           std::size_t count, std::string units)
    : name_(std::move(name)),
      spacing_(spacing),
      lower_(lower),
      upper_(upper),
      count_(count),
      units_(std::move(units)) {
  if (!std::isfinite(lower_) || !std::isfinite(upper_) || !(lower_ < upper_)) {
    throw InvalidAxis("axis '" + name_ + "': need finite lower < upper");
  }
  if (count_ < 2) {
    throw InvalidAxis("axis '" + name_ + "': need at least 2 nodes");
  }
  if (spacing_ == Spacing::logarithmic && !(lower_ > 0.0)) {
    throw InvalidAxis("axis '" + name_ + "': logarithmic spacing needs lower > 0");
  }

  const std::size_t cells = count_ - 1;
  nodes_.resize(count_);
  weights_.assign(count_, 0.0);
  cell_weights_.resize(cells);

  if (spacing_ == Spacing::linear) {
    step_ = (upper_ - lower_) / static_cast<double>(cells);
    for (std::size_t i = 0; i < cells; ++i) {
      nodes_[i] = lower_ + static_cast<double>(i) * step_;
    }
    nodes_[cells] = upper_;
    for (std::size_t c = 0; c < cells; ++c) {
      const double half = 0.5 * (nodes_[c + 1] - nodes_[c]);
      cell_weights_[c] = {half, half};
    }
  } else {
    step_ = std::log(upper_ / lower_) / static_cast<double>(cells);
    for (std::size_t i = 0; i < cells; ++i) {
      nodes_[i] = lower_ * std::exp(static_cast<double>(i) * step_);
    }
    nodes_[cells] = upper_;
    // Cell [a, b] with b = a e^h: weights (wa, wb) reproduce the exact
    // integrals of 1 and of 1/x over the cell.
    const double em1 = std::expm1(step_);
    const double ga = shifted_expm1_neg(step_) / em1;
    const double gb = shifted_expm1_pos(step_) / em1;
    for (std::size_t c = 0; c < cells; ++c) {
      const double b = nodes_[c + 1];
      cell_weights_[c] = {b * ga, b * gb};
    }
  }
  for (std::size_t c = 0; c < cells; ++c) {
    weights_[c] += cell_weights_[c].first;
    weights_[c + 1] += cell_weights_[c].second;
  }

  for (std::size_t i = 1; i < count_; ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) {
      throw InvalidAxis("axis '" + name_ + "': nodes are not strictly increasing");
    }
  }
}

Axis Axis::linear(std::string name, double lower, double upper, std::size_t count,
                  std::string units) {
  return Axis(std::move(name), Spacing::linear, lower, upper, count, std::move(units));
}

Axis Axis::logarithmic(std::string name, double lower, double upper,
                       std::size_t count, std::string units) {
  return Axis(std::move(name), Spacing::logarithmic, lower, upper, count,
              std::move(units));
}

std::optional<CellLocation> Axis::locate(double x, double snap) const {
  if (!std::isfinite(x)) return std::nullopt;
  const double slack = snap * span();
  if (x < lower_ - slack || x > upper_ + slack) return std::nullopt;
  x = std::clamp(x, lower_, upper_);

  const std::size_t last_cell = count_ - 2;
  const double t = spacing_ == Spacing::linear ? (x - lower_) / step_
                                               : std::log(x / lower_) / step_;
  std::size_t i = t <= 0.0 ? 0 : std::min(static_cast<std::size_t>(t), last_cell);
  while (i > 0 && x < nodes_[i]) --i;
  while (i < last_cell && x > nodes_[i + 1]) ++i;
  if (i < last_cell && x == nodes_[i + 1]) ++i;

  const double width = nodes_[i + 1] - nodes_[i];
  const double fraction = std::clamp((x - nodes_[i]) / width, 0.0, 1.0);
  return CellLocation{i, fraction};
}

std::size_t Axis::nearest_node(double x) const {
  const auto loc = locate(std::clamp(x, lower_, upper_), 0.0);
  if (spacing_ == Spacing::linear) {
    return loc->fraction <= 0.5 ? loc->index : loc->index + 1;
  }
  const double a = nodes_[loc->index];
  const double b = nodes_[loc->index + 1];
  return std::log(x / a) <= std::log(b / x) ? loc->index : loc->index + 1;
}

bool Axis::contains(double x, double snap) const {
  const double slack = snap * span();
  return x >= lower_ - slack && x <= upper_ + slack;
}

bool operator==(const Axis& a, const Axis& b) {
  return a.name_ == b.name_ && a.spacing_ == b.spacing_ && a.lower_ == b.lower_ &&
         a.upper_ == b.upper_ && a.count_ == b.count_ && a.units_ == b.units_;
}

Grid::Grid(Axis axis) : axes_{std::move(axis)}, size_(axes_[0].count()) {}

Grid::Grid(Axis first, Axis second)
    : axes_{std::move(first), std::move(second)},
      size_(axes_[0].count() * axes_[1].count()) {
  if (axes_[0].name() == axes_[1].name()) {
    throw InvalidGrid("grid axes must have distinct names");
  }
}

std::size_t Grid::axis_index(const std::string& name) const {
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    if (axes_[k].name() == name) return k;
  }
  throw UnknownAxis("grid has no axis named '" + name + "'");
}

bool Grid::has_axis(const std::string& name) const {
  return std::any_of(axes_.begin(), axes_.end(),
                     [&](const Axis& a) { return a.name() == name; });
}

std::array<std::size_t, 2> Grid::node_indices(std::size_t flat) const {
  if (dimension() == 1) return {flat, 0};
  const std::size_t n1 = axes_[1].count();
  return {flat / n1, flat % n1};
}

Point Grid::coordinates(std::size_t flat) const {
  const auto idx = node_indices(flat);
  if (dimension() == 1) return {axes_[0].node(idx[0]), 0.0};
  return {axes_[0].node(idx[0]), axes_[1].node(idx[1])};
}

double Grid::weight(std::size_t flat) const {
  const auto idx = node_indices(flat);
  if (dimension() == 1) return axes_[0].weight(idx[0]);
  return axes_[0].weight(idx[0]) * axes_[1].weight(idx[1]);
}

double Grid::volume() const {
  double v = 1.0;
  for (const auto& a : axes_) v *= a.span();
  return v;
}

std::string Grid::default_frame() const {
  std::string frame = axes_[0].name();
  for (std::size_t k = 1; k < axes_.size(); ++k) frame += "," + axes_[k].name();
  return frame;
}

GridPtr make_grid(Axis axis) { return std::make_shared<const Grid>(std::move(axis)); }

GridPtr make_grid(Axis first, Axis second) {
  return std::make_shared<const Grid>(std::move(first), std::move(second));
}

}  // namespace infspace
