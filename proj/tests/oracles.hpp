#pragma once

// Reference values computed independently of the library: adaptive
// quadrature of closed-form integrands and a few closed forms.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline double simpson_step(const std::function<double(double)>& f, double a, double b,
                           double fa, double fm, double fb, double whole, double eps,
                           int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

/// Adaptive Simpson quadrature of f on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-12, int depth = 50) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, eps, depth);
}

/// Same, over [a, b] split into n pieces (for sharply peaked integrands).
inline double integrate_pieces(const std::function<double(double)>& f, double a, double b,
                               int n, double eps = 1e-12) {
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double lo = a + (b - a) * k / n;
    const double hi = a + (b - a) * (k + 1) / n;
    sum += integrate(f, lo, hi, eps / n);
  }
  return sum;
}

inline double gaussian(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

/// Mode, in x, of exp(-log(x / median)^2 / (2 s^2)) / x.
inline double lognormal_mode(double median, double s) { return median * std::exp(-s * s); }

/// Golden-section maximization of a unimodal function on [a, b].
inline double argmax(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-12) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  while (std::abs(b - a) > tol * (std::abs(a) + std::abs(b) + 1e-300)) {
    if (f(c) > f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return 0.5 * (a + b);
}

}  // namespace oracle
