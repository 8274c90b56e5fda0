#include "infspace/theory.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "infspace/error.hpp"

namespace infspace {

double FallingBodyLaw::period(double length) const { return std::sqrt(2.0 * length / g); }

void FallingBodyLaw::validate() const {
  if (!(g > 0.0) || !std::isfinite(g)) throw ConfigInvalid("law: g must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigInvalid("law: sigma must be positive");
  }
}

std::string to_string(ProvenanceKind kind) {
  switch (kind) {
    case ProvenanceKind::empirical: return "empirical";
    case ProvenanceKind::analytic: return "analytic";
    case ProvenanceKind::from_conditional: return "from_conditional";
  }
  return "?";
}

ProvenanceKind provenance_kind_from_string(const std::string& text) {
  if (text == "empirical") return ProvenanceKind::empirical;
  if (text == "analytic") return ProvenanceKind::analytic;
  if (text == "from_conditional") return ProvenanceKind::from_conditional;
  throw SchemaError("unknown provenance '" + text + "'");
}

TheoryDensity::TheoryDensity(Density joint_, Density mu_, Provenance provenance_)
    : joint(std::move(joint_)), mu(std::move(mu_)), provenance(provenance_) {
  require_compatible(joint, mu, "theory");
}

std::string to_string(CampaignMode mode) {
  return mode == CampaignMode::set_L ? "set_L" : "set_T";
}

CampaignMode campaign_mode_from_string(const std::string& text) {
  if (text == "set_L" || text == "set-L" || text == "L") return CampaignMode::set_L;
  if (text == "set_T" || text == "set-T" || text == "T") return CampaignMode::set_T;
  throw ConfigInvalid("unknown campaign mode '" + text + "'");
}

Density ExperimentResult::density() const {
  const std::size_t n1 = factors[1].size();
  std::vector<double> values(factors[0].size() * n1, 0.0);
  for (std::size_t i = first[0]; i <= last[0]; ++i) {
    for (std::size_t j = first[1]; j <= last[1]; ++j) {
      values[i * n1 + j] = factors[0][i] * factors[1][j];
    }
  }
  return Density(grid, std::move(values), {}, true);
}

namespace {

struct AxisPair {
  std::size_t length;
  std::size_t period;
};

AxisPair locate_axes(const Grid& grid, const Instruments& instruments) {
  if (grid.dimension() != 2) throw InvalidGrid("fall experiments need a 2D grid");
  const AxisPair a{grid.axis_index(instruments.length.parameter),
                   grid.axis_index(instruments.period.parameter)};
  if (a.length == a.period) {
    throw ModelAxisMismatch("length and period instruments name the same axis");
  }
  return a;
}

double observe(const MeasurementModel& m, double truth, Rng& rng) {
  if (std::isinf(m.width)) return truth;
  switch (m.kind) {
    case MeasurementKind::lognormal: return truth * std::exp(m.width * rng.normal());
    case MeasurementKind::gaussian: return truth + m.width * rng.normal();
    case MeasurementKind::boxcar: return truth + m.width * (2.0 * rng.uniform() - 1.0);
    case MeasurementKind::noninformative: return truth;
  }
  return truth;
}

std::vector<double> normalized_profile(MeasurementModel m, double observed, const Axis& axis) {
  m.center = observed;
  std::vector<double> f = measurement_profile(m, axis);
  double mass = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) mass += f[i] * axis.weight(i);
  if (!(mass > default_tolerances().zero_mass) || !std::isfinite(mass)) {
    throw ZeroMass("experiment: observed " + axis.name() + " = " + std::to_string(observed) +
                   " leaves no mass on the grid");
  }
  for (double& v : f) v /= mass;
  return f;
}

std::pair<std::size_t, std::size_t> nonzero_range(const std::vector<double>& f) {
  std::size_t lo = 0;
  while (lo < f.size() && f[lo] == 0.0) ++lo;
  std::size_t hi = f.size() - 1;
  while (hi > lo && f[hi] == 0.0) --hi;
  return {lo, hi};
}

}  // namespace

ExperimentResult simulate_experiment(const FallingBodyLaw& law, const Instruments& instruments,
                                     double i_value, CampaignMode mode, const GridPtr& grid,
                                     Rng& rng) {
  const AxisPair axes = locate_axes(*grid, instruments);
  const std::size_t i_axis = mode == CampaignMode::set_L ? axes.length : axes.period;
  const Axis& ia = grid->axis(i_axis);
  if (!ia.contains(i_value, default_tolerances().domain_snap)) {
    throw OutOfDomain("experiment: " + ia.name() + " = " + std::to_string(i_value) +
                      " is outside the grid box");
  }

  ExperimentResult r;
  r.grid = grid;
  r.instruments = instruments;
  if (mode == CampaignMode::set_L) {
    r.true_length = i_value;
    r.true_period = law.period(i_value);
  } else {
    r.true_period = i_value;
    r.true_length = law.length(i_value);
  }
  r.observed_length = observe(instruments.length, r.true_length, rng);
  r.observed_period = observe(instruments.period, r.true_period, rng);

  r.factors[axes.length] =
      normalized_profile(instruments.length, r.observed_length, grid->axis(axes.length));
  r.factors[axes.period] =
      normalized_profile(instruments.period, r.observed_period, grid->axis(axes.period));
  for (std::size_t k = 0; k < 2; ++k) {
    std::tie(r.first[k], r.last[k]) = nonzero_range(r.factors[k]);
  }
  return r;
}

ExperimentResult simulate_experiment(const FallingBodyLaw& law, const Instruments& instruments,
                                     double i_value, CampaignMode mode, const GridPtr& grid,
                                     std::uint64_t seed) {
  Rng rng(seed);
  return simulate_experiment(law, instruments, i_value, mode, grid, rng);
}

TheoryAccumulator::TheoryAccumulator(GridPtr grid, Density mu)
    : grid_(std::move(grid)), mu_(std::move(mu)), sum_(grid_->size(), 0.0) {
  if (!(mu_.grid() == *grid_)) throw GridMismatch("accumulator: mu lives on another grid");
}

void TheoryAccumulator::add(const ExperimentResult& r) {
  if (!(r.grid == grid_ || *r.grid == *grid_)) {
    throw GridMismatch("accumulator: experiment lives on another grid");
  }
  const std::size_t n1 = grid_->axis(1).count();
  for (std::size_t i = r.first[0]; i <= r.last[0]; ++i) {
    const double a = r.factors[0][i];
    if (a == 0.0) continue;
    double* row = sum_.data() + i * n1;
    for (std::size_t j = r.first[1]; j <= r.last[1]; ++j) row[j] += a * r.factors[1][j];
  }
  ++count_;
}

TheoryDensity TheoryAccumulator::theory() const {
  return TheoryDensity(Density(grid_, sum_, mu_.frame()), mu_,
                       {ProvenanceKind::empirical, count_});
}

TheoryDensity accumulate_theory(const std::vector<ExperimentResult>& results, const Density& mu) {
  if (results.empty()) throw EmptyInput("accumulate_theory: no experiments");
  TheoryAccumulator acc(mu.grid_ptr(), mu);
  for (const auto& r : results) acc.add(r);
  return acc.theory();
}

std::vector<TheoryDensity> run_campaign(const Campaign& c, const GridPtr& grid,
                                        std::vector<std::size_t> checkpoints) {
  c.law.validate();
  const AxisPair axes = locate_axes(*grid, c.instruments);
  const Axis& la = grid->axis(axes.length);
  const Axis& ta = grid->axis(axes.period);

  Interval bounds = c.i_bounds;
  if (!(bounds.lower < bounds.upper) || !std::isfinite(bounds.lower) ||
      !std::isfinite(bounds.upper)) {
    if (c.mode == CampaignMode::set_L) {
      bounds = {std::max(la.lower(), c.law.length(ta.lower())),
                std::min(la.upper(), c.law.length(ta.upper()))};
    } else {
      bounds = {std::max(ta.lower(), c.law.period(la.lower())),
                std::min(ta.upper(), c.law.period(la.upper()))};
    }
  }
  if (!(bounds.lower > 0.0) || !(bounds.lower < bounds.upper)) {
    throw InvalidBounds("campaign: empty range for the independent quantity");
  }

  std::sort(checkpoints.begin(), checkpoints.end());
  if (checkpoints.empty() || checkpoints.back() != c.n_experiments) {
    checkpoints.push_back(c.n_experiments);
  }
  if (c.n_experiments == 0) throw EmptyInput("campaign: no experiments");

  TheoryAccumulator acc(grid, noninformative(grid));
  std::vector<TheoryDensity> out;
  const double log_ratio = std::log(bounds.upper / bounds.lower);
  std::size_t next = 0;
  for (std::size_t k = 0; k < c.n_experiments; ++k) {
    Rng rng(split_seed(c.master_seed, k));
    const double i_value = bounds.lower * std::exp(rng.uniform() * log_ratio);
    acc.add(simulate_experiment(c.law, c.instruments, i_value, c.mode, grid, rng));
    while (next < checkpoints.size() && checkpoints[next] == k + 1) {
      out.push_back(acc.theory());
      ++next;
    }
  }
  return out;
}

namespace {

void require_positive_box(const Grid& grid) {
  for (const Axis& a : grid.axes()) {
    if (!(a.lower() > 0.0)) {
      throw InvalidGrid("fall theory: axis '" + a.name() + "' must be strictly positive");
    }
  }
}

// log(L / (g T^2 / 2)) at a node, in either frame.
double ridge_offset(const FallingBodyLaw& law, const Point& p, FallFrame frame) {
  if (frame == FallFrame::linear) return std::log(p[0] / law.length(p[1]));
  return p[0] - std::log(0.5 * law.g) - 2.0 * p[1];
}

}  // namespace

TheoryDensity analytic_fall_theory(const FallingBodyLaw& law, const GridPtr& grid,
                                   FallFrame frame) {
  law.validate();
  if (grid->dimension() != 2) throw InvalidGrid("fall theory needs a 2D grid");
  if (frame == FallFrame::linear) require_positive_box(*grid);
  const double s = 1.0 / (2.0 * law.sigma * law.sigma);
  Density joint = Density::tabulate(grid, [&](const Point& p) {
    const double z = ridge_offset(law, p, frame);
    const double shape = std::exp(-z * z * s);
    return frame == FallFrame::linear ? shape / (p[0] * p[1]) : shape;
  });
  Density mu = frame == FallFrame::linear
                   ? Density::tabulate(grid, [](const Point& p) { return (1.0 / p[0]) * (1.0 / p[1]); })
                   : Density::constant(grid, 1.0);
  return TheoryDensity(std::move(joint), std::move(mu), {ProvenanceKind::analytic, 0});
}

GridPtr default_fall_grid(const FallingBodyLaw& law, std::size_t nodes_per_decade,
                          double lower_length, double decades) {
  if (nodes_per_decade < 1 || !(lower_length > 0.0) || !(decades > 0.0)) {
    throw InvalidGrid("default_fall_grid: bad resolution or range");
  }
  const double upper_length = lower_length * std::pow(10.0, decades);
  const auto count = static_cast<std::size_t>(std::llround(decades * nodes_per_decade)) + 1;
  return make_grid(
      Axis::logarithmic("L", lower_length, upper_length, count, "m"),
      Axis::logarithmic("T", law.period(lower_length), law.period(upper_length), count, "s"));
}

double fit_sigma_effective(const Density& joint, const FallingBodyLaw& law, FallFrame frame) {
  const Grid& g = joint.grid();
  if (g.dimension() != 2) throw InvalidGrid("fit_sigma_effective needs a 2D density");
  double mass = 0.0;
  double second = 0.0;
  for (std::size_t n = 0; n < joint.size(); ++n) {
    if (joint[n] == 0.0) continue;
    const double w = g.weight(n) * joint[n];
    const double z = ridge_offset(law, g.coordinates(n), frame);
    mass += w;
    second += w * z * z;
  }
  if (!(mass > 0.0)) throw ZeroMass("fit_sigma_effective: density has no mass");
  return std::sqrt(second / mass);
}

double max_shape_deviation(const Density& marginal, bool reciprocal, double trim) {
  if (marginal.dimension() != 1) throw InvalidGrid("max_shape_deviation needs a 1D density");
  const Axis& a = marginal.grid().axis(0);
  const auto skip = static_cast<std::size_t>(std::floor(trim * static_cast<double>(a.count())));
  if (2 * skip >= a.count()) throw InvalidGrid("max_shape_deviation: nothing left after trim");
  std::vector<double> y;
  for (std::size_t i = skip; i < a.count() - skip; ++i) {
    y.push_back(reciprocal ? marginal[i] * a.node(i) : marginal[i]);
  }
  double ref = 0.0;
  for (double v : y) ref += v;
  ref /= static_cast<double>(y.size());
  if (!(ref > 0.0)) throw ZeroMass("max_shape_deviation: marginal vanishes");
  double dev = 0.0;
  for (double v : y) dev = std::max(dev, std::abs(v / ref - 1.0));
  return dev;
}

TheoryDensity theory_from_conditional(const std::vector<Density>& slices, const Density& mu_i,
                                      const Tolerances& tol) {
  if (mu_i.dimension() != 1) throw InvalidGrid("theory_from_conditional: mu_I must be 1D");
  const Axis& ia = mu_i.grid().axis(0);
  if (slices.size() != ia.count()) {
    throw SliceCountMismatch("theory_from_conditional: " + std::to_string(slices.size()) +
                             " slices for " + std::to_string(ia.count()) + " i-nodes");
  }
  if (slices.empty()) throw EmptyInput("theory_from_conditional: no slices");
  const Grid& dg = slices.front().grid();
  if (dg.dimension() != 1) throw InvalidGrid("theory_from_conditional: slices must be 1D");
  for (const Density& s : slices) {
    if (!(s.grid() == dg)) throw GridMismatch("theory_from_conditional: slices differ in grid");
    const double m = total_mass(s);
    if (!(std::abs(m - 1.0) <= tol.normalization)) {
      throw UnnormalizedSlice("theory_from_conditional: slice mass " + std::to_string(m));
    }
  }
  const Axis& da = dg.axis(0);
  const GridPtr grid = make_grid(ia, da);
  const std::size_t n1 = da.count();
  std::vector<double> joint(grid->size());
  std::vector<double> mu(grid->size());
  for (std::size_t i = 0; i < ia.count(); ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      joint[i * n1 + j] = slices[i][j] * mu_i[i];
      mu[i * n1 + j] = mu_i[i] * noninformative_value(da, da.node(j));
    }
  }
  return TheoryDensity(Density(grid, std::move(joint)), Density(grid, std::move(mu)),
                       {ProvenanceKind::from_conditional, 0});
}

TheoryDensity theory_from_boxed_conditionals(const std::vector<ConditionalBox>& boxes,
                                             const Density& mu_i, const Tolerances& tol) {
  if (mu_i.dimension() != 1) throw InvalidGrid("boxed conditionals: mu_I must be 1D");
  const std::size_t n = mu_i.grid().axis(0).count();
  std::vector<Density> slices;
  slices.reserve(n);
  std::size_t expected = 0;
  for (const ConditionalBox& b : boxes) {
    if (b.first != expected || b.last < b.first || b.last >= n) {
      throw SliceCountMismatch("boxed conditionals: boxes must tile the i-axis in order");
    }
    for (std::size_t i = b.first; i <= b.last; ++i) slices.push_back(b.slice);
    expected = b.last + 1;
  }
  if (expected != n) {
    throw SliceCountMismatch("boxed conditionals: boxes cover " + std::to_string(expected) +
                             " of " + std::to_string(n) + " i-nodes");
  }
  return theory_from_conditional(slices, mu_i, tol);
}

}  // namespace infspace
