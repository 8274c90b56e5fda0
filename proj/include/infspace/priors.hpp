#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "infspace/coordinates.hpp"
#include "infspace/density.hpp"
#include "infspace/random.hpp"

namespace infspace {

enum class PriorKind { jeffreys_reciprocal, uniform, spherical_position };

std::string to_string(PriorKind kind);
PriorKind prior_kind_from_string(const std::string& text);

/// Noninformative prior on a 1D or 2D box. `bounds` has one interval per
/// axis; an empty list means "the whole grid box" for make_prior (sampling
/// always needs explicit bounds).
///
/// spherical_position is the density r^2 sin(theta) over (r, theta), the
/// azimuth integrated out; on a 1D grid it reduces to r^2.
struct PriorSpec {
  PriorKind kind = PriorKind::jeffreys_reciprocal;
  std::vector<Interval> bounds;
};

/// Unnormalized prior tabulated on `grid`, zero outside `spec.bounds`.
/// The multiplicative constant is 1: 1/x (product 1/(x y) in 2D), 1, or
/// r^2 sin(theta). Throws InvalidBounds.
Density make_prior(const PriorSpec& spec, const GridPtr& grid);

/// The noninformative density of an axis: 1/x on logarithmic axes,
/// constant on linear ones. On a 2D grid, the product over both axes.
Density noninformative(const GridPtr& grid);
double noninformative_value(const Axis& axis, double x);

enum class MeasurementKind { gaussian, lognormal, boxcar, noninformative };

std::string to_string(MeasurementKind kind);
MeasurementKind measurement_kind_from_string(const std::string& text);

/// "p = center +- width" on the axis named `parameter`.
///
///   gaussian:       exp(-(x - c)^2 / (2 w^2)); linear axes only.
///   lognormal:      exp(-log(x / c)^2 / (2 w^2)) / x; c is the median,
///                   w the standard deviation of log x.
///   boxcar:         the axis' noninformative density on [c - w, c + w],
///                   zero outside.
///   noninformative: the axis' noninformative density.
///
/// An infinite width turns every kind into noninformative.
struct MeasurementModel {
  MeasurementKind kind = MeasurementKind::noninformative;
  double center = 0.0;
  double width = std::numeric_limits<double>::infinity();
  std::string parameter;
};

/// 1D profile of the model along `axis`. Throws ModelAxisMismatch for
/// gaussian models on logarithmic axes, lognormal models on axes that reach
/// x <= 0, or a non-positive width.
std::vector<double> measurement_profile(const MeasurementModel& m, const Axis& axis);

/// Measurement density on `grid`. On a 2D grid the axis not named by the
/// model carries its noninformative density, so the result is a complete
/// state of information on the joint space.
Density measurement_density(const MeasurementModel& m, const GridPtr& grid);

/// Product of per-axis models (at most one per axis); axes without a model
/// are noninformative.
Density measurement_density(const std::vector<MeasurementModel>& models,
                            const GridPtr& grid);

/// First-digit law p(n) = log10((n + 1) / n), n = 1..9.
std::array<double, 9> benford_digit_probabilities();

/// Independent draws from the truncated prior; one point per draw with one
/// coordinate per interval in `spec.bounds`. Throws InvalidBounds.
std::vector<Point> sample_prior(const PriorSpec& spec, std::size_t n, Rng& rng);
std::vector<Point> sample_prior(const PriorSpec& spec, std::size_t n, std::uint64_t seed);

/// Leading decimal digit of x > 0.
int first_digit(double x);

/// Relative frequencies of leading digits 1..9 of the first coordinate.
std::array<double, 9> first_digit_frequencies(const std::vector<Point>& samples);

}  // namespace infspace
