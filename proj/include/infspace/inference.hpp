#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infspace/coordinates.hpp"
#include "infspace/density.hpp"
#include "infspace/priors.hpp"
#include "infspace/random.hpp"
#include "infspace/theory.hpp"

namespace infspace {

struct CredibleInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Summaries of a 1D density in its axis coordinate. On positive axes the
/// log-frame view is reported alongside: the mode of the density of log x
/// and exp(E[log x]), both expressed in x.
struct Summary {
  std::string axis;
  double mean = 0.0;
  double mode = 0.0;
  CredibleInterval central68;
  CredibleInterval central95;
  std::optional<double> log_frame_mode;
  std::optional<double> geometric_mean;
};

/// Mean by quadrature, mode by grid argmax refined with a parabola through
/// the neighbouring nodes, central intervals by inverting the cell-wise
/// CDF. Throws ZeroMass, NonFinite.
Summary summarize(const Density& p);

/// Value below which a fraction `level` of the mass lies.
double quantile(const Density& p, double level);

struct Posterior {
  /// Normalized theta rho / mu.
  Density density;
  /// Unnormalized theta rho / mu.
  Density raw;
  /// One entry per axis, from the marginals.
  std::vector<Summary> summaries;

  const Summary& summary(const std::string& axis) const;
};

/// Posterior from a normalized or unnormalized density: normalizes and
/// summarizes every axis.
Posterior make_posterior(const Density& raw);

/// theta AND rho under the theory's mu, normalized. rho must live on the
/// theory's grid and frame. Throws GridMismatch, NeutralZero, ZeroMass.
Posterior intersect(const TheoryDensity& theory, const Density& rho);

/// AND of two states under mu, normalized.
Posterior intersect(const Density& a, const Density& b, const Density& mu);

/// Intersects with a measurement of one axis (the other axis
/// noninformative) and returns the normalized marginal on `query`.
Posterior predict(const TheoryDensity& theory, const MeasurementModel& known,
                  const std::string& query);

/// Normalized slice of a 2D density at `fixed_axis` = `value`. Throws
/// OutOfDomain, ZeroSlice.
Density conditional_density(const Density& joint, const std::string& fixed_axis, double value,
                            const Tolerances& tol = default_tolerances());

/// Total-variation distance (1/2) integral |p - q| of the normalized
/// densities.
double total_variation(const Density& p, const Density& q);

/// mu restricted to |y - value| <= half_width on `axis`, zero elsewhere.
Density mu_boxcar(const Density& mu, const std::string& axis, double value, double half_width);

struct WidthPoint {
  double half_width = 0.0;
  double cells = 0.0;
  double tv_to_conditional = 0.0;
};

/// Setup for the conditioning comparison. `joint` and `mu` live on a grid
/// (x, y); the slice is y = `slice_value`. `map` sends (x, y) to (u, v)
/// and its first component depends on x only, through `along`. `target` is
/// the (u, v) grid.
struct ParadoxSetup {
  Density joint;
  Density mu;
  Map2D map;
  CoordinateMap along;
  GridPtr target;
  double slice_value = 0.0;
  /// Full boxcar width in y-cells.
  double width_cells = 2.0;
  std::vector<double> sweep_cells{64.0, 32.0, 16.0, 8.0, 4.0, 2.0};
};

struct ParadoxReport {
  /// Conditional p(x | y = y0), pushed to u.
  Density conditional_pushed;
  /// Density of the pushed joint restricted to the image curve, normalized
  /// over u.
  Density conditional_native;
  double tv_conditionals = 0.0;
  /// push(p AND B) and push(p) AND push(B) under push(mu), normalized.
  Density and_pushed;
  Density and_native;
  double tv_and = 0.0;
  /// TV between the x-marginal of p AND B and the conditional, per width.
  std::vector<WidthPoint> sweep;
};

enum class ParadoxMap { multiplicative_shear, affine };

/// Ready-made setup: a skewed bump on x in [1, 3], y in [0.5, 1.5] with
/// constant mu, mapped either by (x, y) -> (x, x y) or by the affine
/// product (2 x + 1, y / 2) onto a node-matched target grid.
ParadoxSetup standard_paradox_setup(ParadoxMap kind, double slice_value = 1.0,
                                    double width_cells = 2.0);

ParadoxReport borel_kolmogorov_demo(const ParadoxSetup& setup,
                                    const Tolerances& tol = default_tolerances());

struct SampleSet {
  std::vector<Point> points;
  std::size_t proposals = 0;
  double acceptance_rate() const {
    return proposals == 0 ? 1.0 : static_cast<double>(points.size()) / proposals;
  }
};

/// Rejection sampling from the interpolated density: a cell is picked in
/// proportion to volume times its largest node value, a point is drawn
/// uniformly in the cell and accepted with probability value / cell max.
/// Throws EnvelopeFailure when the acceptance rate drops below 1e-6.
SampleSet sample_density(const Density& p, std::size_t n, Rng& rng);
SampleSet sample_posterior(const Posterior& p, std::size_t n, std::uint64_t seed);

/// Kolmogorov-Smirnov distance between the samples' coordinate `axis` and
/// the CDF of the 1D density `p`.
double ks_statistic(const std::vector<Point>& samples, std::size_t axis, const Density& p);

}  // namespace infspace
