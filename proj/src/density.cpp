#include "infspace/density.hpp"

#include <algorithm>
#include <cmath>

#include "infspace/error.hpp"

namespace infspace {

Density::Density(GridPtr grid, std::vector<double> values, std::string frame,
                 bool normalized)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      frame_(std::move(frame)),
      normalized_(normalized) {
  if (!grid_) throw InvalidDensity("density needs a grid");
  if (values_.size() != grid_->size()) {
    throw InvalidDensity("density has " + std::to_string(values_.size()) +
                         " values for a grid of " + std::to_string(grid_->size()) +
                         " nodes");
  }
  for (double v : values_) {
    if (!(v >= 0.0)) throw InvalidDensity("density values must be nonnegative");
  }
  if (frame_.empty()) frame_ = grid_->default_frame();
}

Density Density::tabulate(GridPtr grid, const std::function<double(const Point&)>& f,
                          std::string frame) {
  std::vector<double> values(grid->size());
  for (std::size_t n = 0; n < values.size(); ++n) values[n] = f(grid->coordinates(n));
  return Density(std::move(grid), std::move(values), std::move(frame));
}

Density Density::constant(GridPtr grid, double value, std::string frame) {
  const std::size_t n = grid->size();
  return Density(std::move(grid), std::vector<double>(n, value), std::move(frame));
}

Density Density::relabeled(std::string frame) const {
  return Density(grid_, values_, std::move(frame), normalized_);
}

Density Density::with_values(std::vector<double> values, bool normalized) const {
  return Density(grid_, std::move(values), frame_, normalized);
}

bool Density::compatible_with(const Density& other) const {
  return frame_ == other.frame_ && (grid_ == other.grid_ || *grid_ == *other.grid_);
}

void require_compatible(const Density& a, const Density& b, const char* operation) {
  if (!a.compatible_with(b)) {
    throw GridMismatch(std::string(operation) + ": operands differ in grid or frame ('" +
                       a.frame() + "' vs '" + b.frame() + "')");
  }
}

double integrate(const Density& d, const NodePredicate& region) {
  const Grid& g = d.grid();
  double sum = 0.0;
  for (std::size_t n = 0; n < d.size(); ++n) {
    if (d[n] != 0.0 && region(g.coordinates(n))) sum += d[n] * g.weight(n);
  }
  return sum;
}

double total_mass(const Density& d) {
  const Grid& g = d.grid();
  if (g.dimension() == 1) {
    const auto& w = g.axis(0).weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) sum += d[i] * w[i];
    return sum;
  }
  const auto& w0 = g.axis(0).weights();
  const auto& w1 = g.axis(1).weights();
  const std::size_t n1 = w1.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < w0.size(); ++i) {
    const double* row = d.values().data() + i * n1;
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n1; ++j) row_sum += row[j] * w1[j];
    sum += w0[i] * row_sum;
  }
  return sum;
}

Density normalize(const Density& d, const Tolerances& tol) {
  for (double v : d.values()) {
    if (!std::isfinite(v)) throw NonFinite("normalize: density has non-finite values");
  }
  const double mass = total_mass(d);
  if (!(mass > tol.zero_mass)) throw ZeroMass("normalize: total mass is zero");
  if (!std::isfinite(mass)) throw NonFinite("normalize: total mass overflows");
  std::vector<double> values(d.values().begin(), d.values().end());
  const double scale = 1.0 / mass;
  for (double& v : values) v *= scale;
  return d.with_values(std::move(values), true);
}

Density marginalize(const Density& d, const std::string& keep) {
  const Grid& g = d.grid();
  if (g.dimension() != 2) throw InvalidGrid("marginalize needs a 2D density");
  const std::size_t k = g.axis_index(keep);
  const std::size_t n0 = g.axis(0).count();
  const std::size_t n1 = g.axis(1).count();
  std::vector<double> out(k == 0 ? n0 : n1, 0.0);
  if (k == 0) {
    const auto& w1 = g.axis(1).weights();
    for (std::size_t i = 0; i < n0; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n1; ++j) s += d.at(i, j) * w1[j];
      out[i] = s;
    }
  } else {
    const auto& w0 = g.axis(0).weights();
    for (std::size_t i = 0; i < n0; ++i) {
      for (std::size_t j = 0; j < n1; ++j) out[j] += d.at(i, j) * w0[i];
    }
  }
  return Density(make_grid(g.axis(k)), std::move(out), g.axis(k).name(), d.normalized());
}

namespace {

std::optional<double> interpolate(const Density& d, const Point& point,
                                  const Tolerances& tol) {
  const Grid& g = d.grid();
  const auto a = g.axis(0).locate(point[0], tol.domain_snap);
  if (!a) return std::nullopt;
  if (g.dimension() == 1) {
    const double f = a->fraction;
    const double lo = d[a->index];
    if (f == 0.0) return lo;
    const double hi = d[a->index + 1];
    if (f == 1.0) return hi;
    return (1.0 - f) * lo + f * hi;
  }
  const auto b = g.axis(1).locate(point[1], tol.domain_snap);
  if (!b) return std::nullopt;
  const std::size_t i = a->index;
  const std::size_t j = b->index;
  const double fx = a->fraction;
  const double fy = b->fraction;
  auto row = [&](std::size_t r) {
    const double lo = d.at(r, j);
    if (fy == 0.0) return lo;
    const double hi = d.at(r, j + 1);
    if (fy == 1.0) return hi;
    return (1.0 - fy) * lo + fy * hi;
  };
  const double r0 = row(i);
  if (fx == 0.0) return r0;
  const double r1 = row(i + 1);
  if (fx == 1.0) return r1;
  return (1.0 - fx) * r0 + fx * r1;
}

std::string describe(const Point& p, std::size_t dim) {
  std::string s = "(" + std::to_string(p[0]);
  if (dim == 2) s += ", " + std::to_string(p[1]);
  return s + ")";
}

}  // namespace

double evaluate(const Density& d, const Point& point, const Tolerances& tol) {
  const auto v = interpolate(d, point, tol);
  if (!v) {
    throw OutOfDomain("evaluate: point " + describe(point, d.dimension()) +
                      " is outside the grid box");
  }
  return *v;
}

double evaluate(const Density& d, double x, const Tolerances& tol) {
  return evaluate(d, Point{x, 0.0}, tol);
}

double evaluate_or_zero(const Density& d, const Point& point, const Tolerances& tol) {
  return interpolate(d, point, tol).value_or(0.0);
}

Density slice(const Density& d, const std::string& fixed_axis, double value,
              const Tolerances& tol) {
  const Grid& g = d.grid();
  if (g.dimension() != 2) throw InvalidGrid("slice needs a 2D density");
  const std::size_t k = g.axis_index(fixed_axis);
  const std::size_t other = 1 - k;
  const auto loc = g.axis(k).locate(value, tol.domain_snap);
  if (!loc) {
    throw OutOfDomain("slice: " + fixed_axis + " = " + std::to_string(value) +
                      " is outside the grid box");
  }
  const Axis& free_axis = g.axis(other);
  std::vector<double> out(free_axis.count());
  const double f = loc->fraction;
  for (std::size_t m = 0; m < out.size(); ++m) {
    const double lo = k == 0 ? d.at(loc->index, m) : d.at(m, loc->index);
    if (f == 0.0) {
      out[m] = lo;
      continue;
    }
    const double hi = k == 0 ? d.at(loc->index + 1, m) : d.at(m, loc->index + 1);
    out[m] = f == 1.0 ? hi : (1.0 - f) * lo + f * hi;
  }
  return Density(make_grid(free_axis), std::move(out), free_axis.name());
}

std::size_t argmax(const Density& d) {
  const auto v = d.values();
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace infspace
