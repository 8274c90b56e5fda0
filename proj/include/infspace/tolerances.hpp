#pragma once

namespace infspace {

/// Numerical tolerances shared by the library. The defaults are the values
/// every test and acceptance criterion is pinned to; the CLI can override
/// them from a config file.
struct Tolerances {
  /// Paths that are exact up to floating-point rounding.
  double exact = 1e-12;
  /// Unit-mass checks after normalization.
  double normalization = 1e-9;
  /// Quadrature and interpolation-limited comparisons.
  double quadrature = 1e-6;
  /// A total mass at or below this is treated as zero.
  double zero_mass = 1e-300;
  /// Points this close to a box face (relative to the axis span) are
  /// snapped onto it instead of being rejected as out of domain.
  double domain_snap = 1e-12;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tolerances{};
  return tolerances;
}

}  // namespace infspace
