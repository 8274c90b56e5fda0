#include "infspace/inference.hpp"

#include <algorithm>
#include <cmath>

#include "infspace/algebra.hpp"
#include "infspace/error.hpp"

namespace infspace {
namespace {

// Cumulative mass at each node of a 1D density, cell by cell.
std::vector<double> cumulative(const Density& p) {
  const Axis& a = p.grid().axis(0);
  std::vector<double> c(a.count(), 0.0);
  for (std::size_t k = 0; k + 1 < a.count(); ++k) {
    const auto [wa, wb] = a.cell_weights(k);
    c[k + 1] = c[k] + wa * p[k] + wb * p[k + 1];
  }
  return c;
}

double invert_cdf(const Axis& a, const std::vector<double>& cdf, double level) {
  const double target = level * cdf.back();
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
  if (it == cdf.begin()) return a.node(0);
  if (it == cdf.end()) return a.upper();
  const auto k = static_cast<std::size_t>(it - cdf.begin()) - 1;
  const double cell = cdf[k + 1] - cdf[k];
  const double f = cell > 0.0 ? (target - cdf[k]) / cell : 0.0;
  return a.node(k) + f * (a.node(k + 1) - a.node(k));
}

// Vertex of the parabola through three points, clamped to [x0, x2].
double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double d = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
  if (d == 0.0 || !std::isfinite(d)) return x1;
  const double v = x1 - 0.5 * ((x1 - x0) * (x1 - x0) * (y1 - y2) -
                               (x1 - x2) * (x1 - x2) * (y1 - y0)) / d;
  return std::clamp(v, x0, x2);
}

// Argmax of y over x with parabolic refinement.
double refined_mode(const std::vector<double>& x, const std::vector<double>& y) {
  const auto i = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  if (i == 0 || i + 1 == y.size()) return x[i];
  return parabola_vertex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]);
}

}  // namespace

Summary summarize(const Density& d) {
  if (d.dimension() != 1) throw InvalidGrid("summarize needs a 1D density");
  const Density p = normalize(d);
  const Axis& a = p.grid().axis(0);

  Summary s;
  s.axis = a.name();
  double mean = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) mean += a.weight(i) * p[i] * a.node(i);
  s.mean = mean;

  std::vector<double> y(p.values().begin(), p.values().end());
  s.mode = refined_mode(a.nodes(), y);

  const auto cdf = cumulative(p);
  s.central68 = {invert_cdf(a, cdf, 0.16), invert_cdf(a, cdf, 0.84)};
  s.central95 = {invert_cdf(a, cdf, 0.025), invert_cdf(a, cdf, 0.975)};

  if (a.lower() > 0.0) {
    std::vector<double> logx(a.count());
    std::vector<double> q(a.count());
    double mean_log = 0.0;
    for (std::size_t i = 0; i < a.count(); ++i) {
      logx[i] = std::log(a.node(i));
      q[i] = a.node(i) * p[i];
      mean_log += a.weight(i) * p[i] * logx[i];
    }
    s.log_frame_mode = std::exp(refined_mode(logx, q));
    s.geometric_mean = std::exp(mean_log);
  }
  return s;
}

double quantile(const Density& d, double level) {
  if (d.dimension() != 1) throw InvalidGrid("quantile needs a 1D density");
  const Density p = normalize(d);
  return invert_cdf(p.grid().axis(0), cumulative(p), level);
}

const Summary& Posterior::summary(const std::string& axis) const {
  for (const auto& s : summaries) {
    if (s.axis == axis) return s;
  }
  throw UnknownAxis("posterior has no axis named '" + axis + "'");
}

Posterior make_posterior(const Density& raw) {
  Density density = normalize(raw);
  std::vector<Summary> summaries;
  if (density.dimension() == 1) {
    summaries.push_back(summarize(density));
  } else {
    for (const Axis& a : density.grid().axes()) {
      summaries.push_back(summarize(marginalize(density, a.name())));
    }
  }
  return Posterior{std::move(density), raw, std::move(summaries)};
}

Posterior intersect(const Density& a, const Density& b, const Density& mu) {
  return make_posterior(and_combine(a, b, mu));
}

Posterior intersect(const TheoryDensity& theory, const Density& rho) {
  require_compatible(theory.joint, rho, "intersect");
  return intersect(theory.joint, rho, theory.mu);
}

Posterior predict(const TheoryDensity& theory, const MeasurementModel& known,
                  const std::string& query) {
  const Density rho =
      measurement_density(known, theory.joint.grid_ptr()).relabeled(theory.joint.frame());
  const Posterior joint = intersect(theory, rho);
  return make_posterior(marginalize(joint.density, query));
}

Density conditional_density(const Density& joint, const std::string& fixed_axis, double value,
                            const Tolerances& tol) {
  const Density s = slice(joint, fixed_axis, value, tol);
  if (!(total_mass(s) > tol.zero_mass)) {
    throw ZeroSlice("conditional_density: slice at " + fixed_axis + " = " +
                    std::to_string(value) + " has no mass");
  }
  return normalize(s, tol);
}

double total_variation(const Density& p, const Density& q) {
  require_compatible(p, q, "total_variation");
  const Density pn = normalize(p);
  const Density qn = normalize(q);
  const Grid& g = p.grid();
  double sum = 0.0;
  for (std::size_t n = 0; n < pn.size(); ++n) sum += g.weight(n) * std::abs(pn[n] - qn[n]);
  return 0.5 * sum;
}

Density mu_boxcar(const Density& mu, const std::string& axis, double value, double half_width) {
  const Grid& g = mu.grid();
  const std::size_t k = g.axis_index(axis);
  const double slack = 1e-9 * half_width;
  std::vector<double> out(mu.size());
  for (std::size_t n = 0; n < out.size(); ++n) {
    const double y = g.coordinates(n)[k];
    out[n] = std::abs(y - value) <= half_width + slack ? mu[n] : 0.0;
  }
  return mu.with_values(std::move(out));
}

ParadoxReport borel_kolmogorov_demo(const ParadoxSetup& s, const Tolerances& tol) {
  const Grid& g = s.joint.grid();
  if (g.dimension() != 2 || s.target->dimension() != 2) {
    throw InvalidGrid("borel_kolmogorov_demo needs 2D grids");
  }
  require_compatible(s.joint, s.mu, "borel_kolmogorov_demo");
  const std::string& x_name = g.axis(0).name();
  const std::string& y_name = g.axis(1).name();
  const Axis& ya = g.axis(1);
  const auto loc = ya.locate(s.slice_value, tol.domain_snap);
  if (!loc) throw OutOfDomain("borel_kolmogorov_demo: slice is outside the grid box");
  const double cell = ya.node(loc->index + 1) - ya.node(loc->index);

  ParadoxReport r{
      Density::constant(s.target, 0.0), Density::constant(s.target, 0.0), 0.0,
      Density::constant(s.target, 0.0), Density::constant(s.target, 0.0), 0.0, {}};

  const Density cond = conditional_density(s.joint, y_name, s.slice_value, tol);
  const GridPtr u_grid = make_grid(s.target->axis(0));
  r.conditional_pushed = normalize(push_forward(cond, s.along, u_grid, tol), tol);

  const Axis& ua = u_grid->axis(0);
  std::vector<double> native(ua.count());
  for (std::size_t i = 0; i < native.size(); ++i) {
    const double u = ua.node(i);
    const double x = s.along.inverse(u);
    const double v = s.map.forward({x, s.slice_value})[1];
    native[i] = pushed_value(s.joint, s.map, {u, v}, tol);
  }
  const Density native_d(u_grid, std::move(native));
  if (!(total_mass(native_d) > tol.zero_mass)) {
    throw ZeroSlice("borel_kolmogorov_demo: image curve carries no mass");
  }
  r.conditional_native = normalize(native_d, tol);
  r.tv_conditionals = total_variation(r.conditional_pushed, r.conditional_native);

  const Density box = mu_boxcar(s.mu, y_name, s.slice_value, 0.5 * s.width_cells * cell);
  const Density p_and_box = and_combine(s.joint, box, s.mu);
  auto push = [&](const Density& d) { return push_forward(d, s.map, s.target, tol); };
  r.and_pushed = normalize(push(p_and_box), tol);
  r.and_native = normalize(and_combine(push(s.joint), push(box), push(s.mu)), tol);
  r.tv_and = total_variation(r.and_pushed, r.and_native);

  for (double cells : s.sweep_cells) {
    const double half = 0.5 * cells * cell;
    const Density b = mu_boxcar(s.mu, y_name, s.slice_value, half);
    const Density m = marginalize(and_combine(s.joint, b, s.mu), x_name);
    r.sweep.push_back({half, cells, total_variation(m, cond.relabeled(m.frame()))});
  }
  return r;
}

ParadoxSetup standard_paradox_setup(ParadoxMap kind, double slice_value, double width_cells) {
  const GridPtr source = make_grid(Axis::linear("x", 1.0, 3.0, 201),
                                   Axis::linear("y", 0.5, 1.5, 401));
  const Density joint = Density::tabulate(source, [](const Point& p) {
    const double a = (p[0] - 1.7) / 0.35;
    const double b = (p[1] - 1.0 + 0.15 * (p[0] - 2.0)) / 0.15;
    return std::exp(-0.5 * (a * a + b * b));
  });
  const Density mu = Density::constant(source, 1.0);
  if (kind == ParadoxMap::affine) {
    const CoordinateMap fu = CoordinateMap::affine(2.0, 1.0);
    const CoordinateMap fv = CoordinateMap::affine(0.5, 0.0);
    const GridPtr target = make_grid(Axis::linear("u", 3.0, 7.0, 201),
                                     Axis::linear("v", 0.25, 0.75, 401));
    return ParadoxSetup{joint, mu, Map2D::product(fu, fv), fu, target, slice_value,
                        width_cells};
  }
  const GridPtr target = make_grid(Axis::linear("u", 1.0, 3.0, 201),
                                   Axis::linear("v", 0.5, 4.5, 1601));
  return ParadoxSetup{joint,        mu,           Map2D::multiplicative_shear(),
                      CoordinateMap::identity(), target, slice_value, width_cells};
}

SampleSet sample_density(const Density& p, std::size_t n, Rng& rng) {
  SampleSet out;
  if (n == 0) return out;
  const Grid& g = p.grid();
  const bool two = g.dimension() == 2;
  const Axis& a0 = g.axis(0);
  const std::size_t c0 = a0.count() - 1;
  const std::size_t c1 = two ? g.axis(1).count() - 1 : 1;

  std::vector<double> envelope(c0 * c1);
  std::vector<double> cum(c0 * c1);
  double total = 0.0;
  for (std::size_t i = 0; i < c0; ++i) {
    const double dx = a0.node(i + 1) - a0.node(i);
    for (std::size_t j = 0; j < c1; ++j) {
      double m = 0.0;
      double vol = dx;
      if (two) {
        const Axis& a1 = g.axis(1);
        vol *= a1.node(j + 1) - a1.node(j);
        m = std::max({p.at(i, j), p.at(i + 1, j), p.at(i, j + 1), p.at(i + 1, j + 1)});
      } else {
        m = std::max(p[i], p[i + 1]);
      }
      envelope[i * c1 + j] = m;
      total += m * vol;
      cum[i * c1 + j] = total;
    }
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw ZeroMass("sample_density: density has no mass");
  }

  constexpr double kMinAcceptance = 1e-6;
  const std::size_t budget_floor = 1000000;
  out.points.reserve(n);
  while (out.points.size() < n) {
    ++out.proposals;
    const double t = rng.uniform() * total;
    const auto c = std::min(static_cast<std::size_t>(
                                std::upper_bound(cum.begin(), cum.end(), t) - cum.begin()),
                            cum.size() - 1);
    const std::size_t i = c / c1;
    const std::size_t j = c % c1;
    Point x{a0.node(i) + rng.uniform() * (a0.node(i + 1) - a0.node(i)), 0.0};
    if (two) {
      const Axis& a1 = g.axis(1);
      x[1] = a1.node(j) + rng.uniform() * (a1.node(j + 1) - a1.node(j));
    }
    const double v = evaluate(p, x);
    if (rng.uniform() * envelope[c] < v) out.points.push_back(x);
    if (out.proposals > budget_floor &&
        static_cast<double>(out.points.size()) < kMinAcceptance * out.proposals) {
      throw EnvelopeFailure("sample_density: acceptance rate below 1e-6");
    }
  }
  return out;
}

SampleSet sample_posterior(const Posterior& p, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_density(p.density, n, rng);
}

double ks_statistic(const std::vector<Point>& samples, std::size_t axis, const Density& p) {
  if (samples.empty()) return 0.0;
  std::vector<double> x;
  x.reserve(samples.size());
  for (const Point& s : samples) x.push_back(s[axis]);
  std::sort(x.begin(), x.end());

  const Density pn = normalize(p);
  const Axis& a = pn.grid().axis(0);
  const auto cdf = cumulative(pn);
  auto model_cdf = [&](double v) {
    const auto loc = a.locate(v, 0.0);
    if (!loc) return v < a.lower() ? 0.0 : 1.0;
    return cdf[loc->index] + loc->fraction * (cdf[loc->index + 1] - cdf[loc->index]);
  };
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double f = model_cdf(x[k]);
    d = std::max({d, std::abs(f - k / n), std::abs((k + 1) / n - f)});
  }
  return d;
}

}  // namespace infspace
