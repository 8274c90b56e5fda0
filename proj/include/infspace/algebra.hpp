#pragma once

#include <functional>
#include <string>
#include <vector>

#include "infspace/density.hpp"
#include "infspace/random.hpp"

namespace infspace {

/// OR (union of states of information): pointwise sum, not renormalized.
Density or_combine(const Density& p, const Density& q);

/// AND (intersection): pointwise p q / mu. Where p q = 0 the result is 0
/// even if mu vanishes there; where p q > 0 and mu = 0 throws NeutralZero.
/// Computed as p * (q / mu) so that and_combine(p, mu, mu) == p bit for bit.
Density and_combine(const Density& p, const Density& q, const Density& mu);

/// Pointwise lambda * p. Throws NegativeScalar for lambda < 0 or non-finite.
Density scale(double lambda, const Density& p);

/// Fuzzy-set realization: pointwise max / min, neutral element 1.
Density fuzzy_or(const Density& p, const Density& q);
Density fuzzy_and(const Density& p, const Density& q);

/// Information content of p relative to the null-information density mu,
/// I = integral of p log(p / mu), with both normalized over the box and
/// 0 log 0 = 0. Throws SupportViolation where p > 0 and mu = 0.
double information_content(const Density& p, const Density& mu,
                           const Tolerances& tol = default_tolerances());

/// Symmetric Kullback-Leibler divergence KL(p|q) + KL(q|p) of the
/// normalized densities, summed over nodes where both are positive.
/// The mass each density puts where the other vanishes is reported so the
/// caller can decide whether the restriction is negligible.
struct SymmetricDivergence {
  double value = 0.0;
  double p_mass_outside_q = 0.0;
  double q_mass_outside_p = 0.0;
};
SymmetricDivergence symmetric_divergence(const Density& p, const Density& q);

enum class RealizationKind { sum_product, max_min, custom };

/// A concrete pair of OR / AND operations together with the neutral element
/// of AND.
class Realization {
 public:
  using Binary = std::function<Density(const Density&, const Density&)>;

  static Realization sum_product(Density mu);
  static Realization max_min(GridPtr grid);
  /// Arbitrary operations; used to build negative controls.
  static Realization custom(std::string name, Binary join, Binary meet, Density neutral);

  RealizationKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Density& neutral() const { return neutral_; }
  Density join(const Density& p, const Density& q) const { return join_(p, q); }
  Density meet(const Density& p, const Density& q) const { return meet_(p, q); }

 private:
  Realization(RealizationKind kind, std::string name, Binary join, Binary meet,
              Density neutral);

  RealizationKind kind_;
  std::string name_;
  Binary join_;
  Binary meet_;
  Density neutral_;
};

struct AxiomCheck {
  std::string axiom;
  bool passed = true;
  double max_discrepancy = 0.0;
  std::size_t failures = 0;
};

struct AxiomReport {
  std::string realization;
  std::size_t samples = 0;
  std::vector<AxiomCheck> checks;

  bool all_passed() const;
  const AxiomCheck& find(const std::string& axiom) const;
};

struct DensityTriple {
  Density p;
  Density q;
  Density r;
};

/// AND without the division by mu: a negative control whose neutral-element
/// check fails as soon as mu is not constant.
Realization unnormalized_product_realization(Density mu);

/// Random states on `grid`: values uniform in (0, 1), each node zero with
/// probability `zero_fraction`.
Density random_density(const GridPtr& grid, Rng& rng, double zero_fraction = 0.2);
std::vector<DensityTriple> random_triples(const GridPtr& grid, std::size_t count, Rng& rng,
                                          double zero_fraction = 0.2);

/// Checks, node by node, the support axioms, the neutral element,
/// commutativity and associativity of OR and AND, and distributivity of AND
/// over OR. Identities are compared with relative tolerance `tolerance`,
/// support axioms exactly.
AxiomReport check_axioms(const Realization& realization,
                         const std::vector<DensityTriple>& samples,
                         double tolerance = default_tolerances().exact);

}  // namespace infspace
