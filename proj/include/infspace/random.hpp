#pragma once

#include <cstdint>
#include <random>

namespace infspace {

/// Explicit generator state for every stochastic operation.
///
/// mt19937_64 is fully specified by the standard; the std distributions are
/// not, so uniform and normal deviates are derived here to keep runs
/// bit-reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_low() { return 1.0 - uniform(); }
  double uniform(double lower, double upper) { return lower + (upper - lower) * uniform(); }
  /// Standard normal deviate (Box-Muller, both outputs used).
  double normal();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Seed of the i-th independent stream derived from a master seed.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t i) { return master ^ i; }

}  // namespace infspace
