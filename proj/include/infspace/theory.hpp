#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "infspace/density.hpp"
#include "infspace/priors.hpp"
#include "infspace/random.hpp"

namespace infspace {

/// L - g T^2 / 2 = 0, with a lognormal theoretical uncertainty of width
/// `sigma` on L / (g T^2 / 2).
struct FallingBodyLaw {
  double g = 9.81;
  double sigma = 0.001;

  double length(double period) const { return 0.5 * g * period * period; }
  double period(double length) const;
  /// Throws ConfigInvalid unless g > 0 and sigma > 0.
  void validate() const;
};

/// Working coordinates of a fall theory: (L, T) themselves, or
/// (log L, log T) with unit reference constants.
enum class FallFrame { linear, logarithmic };

enum class ProvenanceKind { empirical, analytic, from_conditional };

std::string to_string(ProvenanceKind kind);
ProvenanceKind provenance_kind_from_string(const std::string& text);

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::analytic;
  std::size_t n_experiments = 0;
};

/// Joint density over (independent, dependent) parameters together with the
/// null-information density it was built with and must be consumed with.
struct TheoryDensity {
  TheoryDensity(Density joint, Density mu, Provenance provenance);

  Density joint;
  Density mu;
  Provenance provenance;
};

enum class CampaignMode { set_L, set_T };

std::string to_string(CampaignMode mode);
CampaignMode campaign_mode_from_string(const std::string& text);

/// Instrument models for the two measured quantities. `parameter` names
/// the grid axis of each; `center` is ignored (it becomes the observed
/// value of each experiment).
struct Instruments {
  MeasurementModel length{MeasurementKind::lognormal, 0.0, 0.001, "L"};
  MeasurementModel period{MeasurementKind::lognormal, 0.0, 0.001, "T"};
};

/// One simulated experiment. Its density on the joint grid is the product
/// of two 1D measurement profiles, each normalized, so only the factors
/// are stored; `density()` materializes the product.
struct ExperimentResult {
  GridPtr grid;
  std::array<std::vector<double>, 2> factors;
  /// Index range [first, last] of the nonzero entries of each factor.
  std::array<std::size_t, 2> first{};
  std::array<std::size_t, 2> last{};

  double true_length = 0.0;
  double true_period = 0.0;
  double observed_length = 0.0;
  double observed_period = 0.0;
  Instruments instruments;

  Density density() const;
};

/// Sets the independent quantity to `i_value` (L for set_L, T for set_T),
/// derives the other from the law, perturbs both with instrument noise and
/// returns the product of the two measurement densities centered on the
/// observed values. Throws OutOfDomain when `i_value` is outside the box
/// and ZeroMass when an observation falls so far outside that its profile
/// vanishes on the grid.
ExperimentResult simulate_experiment(const FallingBodyLaw& law, const Instruments& instruments,
                                     double i_value, CampaignMode mode, const GridPtr& grid,
                                     Rng& rng);
ExperimentResult simulate_experiment(const FallingBodyLaw& law, const Instruments& instruments,
                                     double i_value, CampaignMode mode, const GridPtr& grid,
                                     std::uint64_t seed);

/// Running OR of experiment densities. Only the nonzero block of each
/// experiment is touched, so long campaigns on fine grids stay cheap.
class TheoryAccumulator {
 public:
  TheoryAccumulator(GridPtr grid, Density mu);

  /// Throws GridMismatch if the result lives on another grid.
  void add(const ExperimentResult& result);
  std::size_t count() const { return count_; }
  TheoryDensity theory() const;

 private:
  GridPtr grid_;
  Density mu_;
  std::vector<double> sum_;
  std::size_t count_ = 0;
};

/// OR-fold of the (normalized) experiment densities. Throws EmptyInput and
/// GridMismatch.
TheoryDensity accumulate_theory(const std::vector<ExperimentResult>& results, const Density& mu);

struct Campaign {
  CampaignMode mode = CampaignMode::set_L;
  std::size_t n_experiments = 1000;
  Instruments instruments;
  FallingBodyLaw law;
  std::uint64_t master_seed = 1;
  /// Range of the independent quantity, drawn from its 1/x prior. Empty
  /// (lower >= upper) or unbounded means: the part of the i-axis whose
  /// image under the law stays inside the d-axis.
  Interval i_bounds{0.0, 0.0};
};

/// Runs a campaign; experiment k uses the stream seeded with
/// split_seed(master_seed, k). Returns a snapshot after each count listed
/// in `checkpoints` (sorted); an empty list returns only the final theory.
std::vector<TheoryDensity> run_campaign(const Campaign& campaign, const GridPtr& grid,
                                        std::vector<std::size_t> checkpoints = {});

/// theta(L, T) = exp(-log(L / (g T^2 / 2))^2 / (2 sigma^2)) / (L T), with
/// mu = 1 / (L T); axis 0 is L, axis 1 is T. In the logarithmic frame the
/// axes are log L and log T, theta drops the 1 / (L T) factor and mu = 1.
/// Throws InvalidGrid for non-2D grids or non-positive boxes (linear frame).
TheoryDensity analytic_fall_theory(const FallingBodyLaw& law, const GridPtr& grid,
                                   FallFrame frame = FallFrame::linear);

/// Three decades of L starting at `lower_length`, and the matching T range,
/// both logarithmic with the same node count. The T step is then half the L
/// step and every L node has a T node exactly on the ridge.
GridPtr default_fall_grid(const FallingBodyLaw& law, std::size_t nodes_per_decade = 300,
                          double lower_length = 0.1, double decades = 3.0);

/// sigma of the analytic theory with the same second moment of
/// log(L / (g T^2 / 2)) as `joint`.
double fit_sigma_effective(const Density& joint, const FallingBodyLaw& law,
                           FallFrame frame = FallFrame::linear);

/// Largest relative deviation of a 1D marginal from the shape 1/x
/// (`reciprocal`) or from a constant, over the nodes left after trimming a
/// fraction `trim` of the axis at each end. The reference level is the mean
/// of x p(x) (or p(x)) over those nodes.
double max_shape_deviation(const Density& marginal, bool reciprocal, double trim = 0.05);

/// theta(i, d) = cond_i(d) mu_I(i). One slice per node of mu_i's axis, all
/// on the same d-axis and normalized. The joint mu is mu_I times the
/// d-axis noninformative density. Throws SliceCountMismatch,
/// UnnormalizedSlice, GridMismatch.
TheoryDensity theory_from_conditional(const std::vector<Density>& slices, const Density& mu_i,
                                      const Tolerances& tol = default_tolerances());

/// A conditional that is constant over the i-nodes first..last.
struct ConditionalBox {
  std::size_t first = 0;
  std::size_t last = 0;
  Density slice;
};

/// Boxed form: the boxes must tile the i-axis in order.
TheoryDensity theory_from_boxed_conditionals(const std::vector<ConditionalBox>& boxes,
                                             const Density& mu_i,
                                             const Tolerances& tol = default_tolerances());

}  // namespace infspace
