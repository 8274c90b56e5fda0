#include "infspace/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "infspace/error.hpp"

namespace infspace {
namespace {

template <typename Op>
Density pointwise(const Density& p, const Density& q, const char* name, Op op) {
  require_compatible(p, q, name);
  std::vector<double> out(p.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = op(p[n], q[n]);
  return p.with_values(std::move(out));
}

}  // namespace

Density or_combine(const Density& p, const Density& q) {
  return pointwise(p, q, "or_combine", [](double a, double b) { return a + b; });
}

Density and_combine(const Density& p, const Density& q, const Density& mu) {
  require_compatible(p, q, "and_combine");
  require_compatible(p, mu, "and_combine");
  std::vector<double> out(p.size());
  for (std::size_t n = 0; n < out.size(); ++n) {
    const double a = p[n];
    const double b = q[n];
    if (a == 0.0 || b == 0.0) {
      out[n] = 0.0;
      continue;
    }
    if (mu[n] == 0.0) {
      throw NeutralZero("and_combine: null-information density vanishes where both "
                        "operands are positive");
    }
    out[n] = a * (b / mu[n]);
  }
  return p.with_values(std::move(out));
}

Density scale(double lambda, const Density& p) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw NegativeScalar("scale: factor must be finite and nonnegative");
  }
  std::vector<double> out(p.values().begin(), p.values().end());
  for (double& v : out) v *= lambda;
  return p.with_values(std::move(out));
}

Density fuzzy_or(const Density& p, const Density& q) {
  return pointwise(p, q, "fuzzy_or", [](double a, double b) { return std::max(a, b); });
}

Density fuzzy_and(const Density& p, const Density& q) {
  return pointwise(p, q, "fuzzy_and", [](double a, double b) { return std::min(a, b); });
}

double information_content(const Density& p, const Density& mu, const Tolerances& tol) {
  require_compatible(p, mu, "information_content");
  const Density pn = normalize(p, tol);
  const Density mn = normalize(mu, tol);
  const Grid& g = p.grid();
  double sum = 0.0;
  for (std::size_t n = 0; n < pn.size(); ++n) {
    if (pn[n] == 0.0) continue;
    if (mn[n] == 0.0) {
      throw SupportViolation("information_content: p > 0 where mu = 0");
    }
    sum += g.weight(n) * pn[n] * std::log(pn[n] / mn[n]);
  }
  return sum;
}

SymmetricDivergence symmetric_divergence(const Density& p, const Density& q) {
  require_compatible(p, q, "symmetric_divergence");
  const Density pn = normalize(p);
  const Density qn = normalize(q);
  const Grid& g = p.grid();
  SymmetricDivergence out;
  for (std::size_t n = 0; n < pn.size(); ++n) {
    const double a = pn[n];
    const double b = qn[n];
    const double w = g.weight(n);
    if (a > 0.0 && b > 0.0) {
      out.value += w * (a - b) * (std::log(a) - std::log(b));
    } else if (a > 0.0) {
      out.p_mass_outside_q += w * a;
    } else if (b > 0.0) {
      out.q_mass_outside_p += w * b;
    }
  }
  return out;
}

Realization::Realization(RealizationKind kind, std::string name, Binary join,
                         Binary meet, Density neutral)
    : kind_(kind),
      name_(std::move(name)),
      join_(std::move(join)),
      meet_(std::move(meet)),
      neutral_(std::move(neutral)) {}

Realization Realization::sum_product(Density mu) {
  for (double v : mu.values()) {
    if (!(v > 0.0)) {
      throw NeutralZero("sum_product realization needs a strictly positive neutral element");
    }
  }
  Density neutral = mu;
  return Realization(
      RealizationKind::sum_product, "sum_product", or_combine,
      [mu = std::move(mu)](const Density& p, const Density& q) {
        return and_combine(p, q, mu);
      },
      std::move(neutral));
}

Realization Realization::max_min(GridPtr grid) {
  return Realization(RealizationKind::max_min, "max_min", fuzzy_or, fuzzy_and,
                     Density::constant(std::move(grid), 1.0));
}

Realization Realization::custom(std::string name, Binary join, Binary meet,
                                Density neutral) {
  return Realization(RealizationKind::custom, std::move(name), std::move(join),
                     std::move(meet), std::move(neutral));
}

Realization unnormalized_product_realization(Density mu) {
  return Realization::custom(
      "unnormalized_product", or_combine,
      [](const Density& p, const Density& q) {
        return pointwise(p, q, "unnormalized_product", [](double a, double b) { return a * b; });
      },
      std::move(mu));
}

Density random_density(const GridPtr& grid, Rng& rng, double zero_fraction) {
  std::vector<double> v(grid->size());
  for (double& x : v) {
    const bool zero = rng.uniform() < zero_fraction;
    const double u = rng.uniform_open_low();
    x = zero ? 0.0 : u;
  }
  return Density(grid, std::move(v));
}

std::vector<DensityTriple> random_triples(const GridPtr& grid, std::size_t count, Rng& rng,
                                          double zero_fraction) {
  std::vector<DensityTriple> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Density p = random_density(grid, rng, zero_fraction);
    Density q = random_density(grid, rng, zero_fraction);
    Density r = random_density(grid, rng, zero_fraction);
    out.push_back({std::move(p), std::move(q), std::move(r)});
  }
  return out;
}

bool AxiomReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck& AxiomReport::find(const std::string& axiom) const {
  for (const auto& c : checks) {
    if (c.axiom == axiom) return c;
  }
  throw std::out_of_range("no axiom check named '" + axiom + "'");
}

namespace {

class Tally {
 public:
  Tally(std::string axiom, double tolerance) : tolerance_(tolerance) {
    check_.axiom = std::move(axiom);
  }

  void identity(const Density& lhs, const Density& rhs) {
    for (std::size_t n = 0; n < lhs.size(); ++n) {
      const double a = lhs[n];
      const double b = rhs[n];
      const double diff = std::abs(a - b);
      const double scale = std::max({1.0, std::abs(a), std::abs(b)});
      const double rel = diff / scale;
      check_.max_discrepancy = std::max(check_.max_discrepancy, rel);
      if (!(rel <= tolerance_)) record_failure();
    }
  }

  void implication(bool holds) {
    if (!holds) record_failure();
  }

  AxiomCheck result() const { return check_; }

 private:
  void record_failure() {
    check_.passed = false;
    ++check_.failures;
  }

  double tolerance_;
  AxiomCheck check_;
};

}  // namespace

AxiomReport check_axioms(const Realization& r, const std::vector<DensityTriple>& samples,
                         double tolerance) {
  Tally support_or("support_or", tolerance);
  Tally support_and("support_and", tolerance);
  Tally neutral("neutral_element", tolerance);
  Tally comm_or("commutative_or", tolerance);
  Tally comm_and("commutative_and", tolerance);
  Tally assoc_or("associative_or", tolerance);
  Tally assoc_and("associative_and", tolerance);
  Tally distributive("distributive", tolerance);

  const Density& m = r.neutral();
  for (const auto& [p, q, s] : samples) {
    const Density p_or_q = r.join(p, q);
    const Density p_and_q = r.meet(p, q);
    for (std::size_t n = 0; n < p.size(); ++n) {
      if (p_or_q[n] != 0.0) support_or.implication(p[n] != 0.0 || q[n] != 0.0);
      if (p_and_q[n] != 0.0) support_and.implication(p[n] != 0.0 && q[n] != 0.0);
    }

    neutral.identity(r.meet(p, m), p);
    neutral.identity(r.meet(m, p), p);

    comm_or.identity(p_or_q, r.join(q, p));
    comm_and.identity(p_and_q, r.meet(q, p));

    assoc_or.identity(r.join(p_or_q, s), r.join(p, r.join(q, s)));
    assoc_and.identity(r.meet(p_and_q, s), r.meet(p, r.meet(q, s)));

    distributive.identity(r.meet(p, r.join(q, s)), r.join(p_and_q, r.meet(p, s)));
  }

  AxiomReport report;
  report.realization = r.name();
  report.samples = samples.size();
  for (const Tally* t : {&support_or, &support_and, &neutral, &comm_or, &comm_and,
                         &assoc_or, &assoc_and, &distributive}) {
    report.checks.push_back(t->result());
  }
  return report;
}

}  // namespace infspace
