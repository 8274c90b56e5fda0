#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

#include "infspace/density.hpp"
#include "infspace/error.hpp"
#include "infspace/random.hpp"

using namespace infspace;

TEST_CASE("axis validation") {
  CHECK_THROWS_AS(Axis::linear("x", 1.0, 1.0, 10), InvalidAxis);
  CHECK_THROWS_AS(Axis::linear("x", 0.0, 1.0, 1), InvalidAxis);
  CHECK_THROWS_AS(Axis::logarithmic("x", 0.0, 1.0, 10), InvalidAxis);
  CHECK_THROWS_AS(Axis::logarithmic("x", -1.0, 1.0, 10), InvalidAxis);
  CHECK_THROWS_AS(make_grid(Axis::linear("x", 0, 1, 3), Axis::linear("x", 0, 1, 3)),
                  InvalidGrid);

  const Axis a = Axis::logarithmic("T", 1e-2, 1e2, 401);
  CHECK(a.node(0) == 1e-2);
  CHECK(a.node(400) == 1e2);
  for (std::size_t i = 1; i < a.count(); ++i) CHECK(a.node(i) > a.node(i - 1));
}

TEST_CASE("quadrature weights are positive and sum to the box volume") {
  for (const Axis& a : {Axis::linear("x", -3.0, 5.0, 17), Axis::logarithmic("T", 1e-3, 1e3, 1201),
                        Axis::logarithmic("L", 0.1, 100.0, 2)}) {
    double sum = 0.0;
    for (double w : a.weights()) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(a.span()).epsilon(1e-12));
  }
  const GridPtr g = make_grid(Axis::linear("x", 0, 2, 11), Axis::logarithmic("y", 1, 10, 31));
  double sum = 0.0;
  for (std::size_t n = 0; n < g->size(); ++n) sum += g->weight(n);
  CHECK(sum == doctest::Approx(g->volume()).epsilon(1e-12));
}

TEST_CASE("integrate") {
  SUBCASE("uniform on the unit box") {
    const GridPtr g = make_grid(Axis::linear("x", 0.0, 1.0, 101));
    const Density d = Density::constant(g, 1.0);
    CHECK(std::abs(total_mass(d) - 1.0) < 1e-12);
  }
  SUBCASE("1/T over [1, e]") {
    const GridPtr g = make_grid(Axis::logarithmic("T", 1.0, std::numbers::e, 50));
    const Density d = Density::tabulate(g, [](const Point& p) { return 1.0 / p[0]; });
    CHECK(std::abs(integrate(d, [](const Point&) { return true; }) - 1.0) < 1e-6);
  }
  SUBCASE("empty region") {
    const GridPtr g = make_grid(Axis::linear("x", 0.0, 1.0, 11));
    CHECK(integrate(Density::constant(g, 3.0), [](const Point&) { return false; }) == 0.0);
  }
  SUBCASE("1/x on a log grid to 1e-6 at 200 nodes per decade") {
    const GridPtr g = make_grid(Axis::logarithmic("x", 1e-2, 1e3, 1001));
    const Density d = Density::tabulate(g, [](const Point& p) { return 1.0 / p[0]; });
    CHECK(std::abs(total_mass(d) - std::log(1e5)) < 1e-6 * std::log(1e5));
  }
  SUBCASE("smooth integrand on a log grid") {
    const GridPtr g = make_grid(Axis::logarithmic("x", 0.1, 10.0, 401));
    auto f = [](double x) { return std::exp(-x) * x; };
    const Density d = Density::tabulate(g, [&](const Point& p) { return f(p[0]); });
    CHECK(total_mass(d) == doctest::Approx(oracle::integrate(f, 0.1, 10.0)).epsilon(1e-4));
  }
}

TEST_CASE("additivity over disjoint regions") {
  const GridPtr g = make_grid(Axis::linear("x", 0, 1, 37), Axis::logarithmic("y", 1, 5, 23));
  Rng rng(11);
  std::vector<double> v(g->size());
  for (double& x : v) x = rng.uniform();
  const Density d(g, v);
  auto a = [](const Point& p) { return p[0] < 0.4; };
  auto b = [](const Point& p) { return p[0] >= 0.4 && p[1] > 2.0; };
  auto ab = [&](const Point& p) { return a(p) || b(p); };
  CHECK(integrate(d, ab) == doctest::Approx(integrate(d, a) + integrate(d, b)).epsilon(1e-14));
}

TEST_CASE("density construction rejects bad values") {
  const GridPtr g = make_grid(Axis::linear("x", 0, 1, 3));
  CHECK_THROWS_AS(Density(g, {1.0, -1.0, 0.0}), InvalidDensity);
  CHECK_THROWS_AS(Density(g, {1.0, std::nan(""), 0.0}), InvalidDensity);
  CHECK_THROWS_AS(Density(g, {1.0, 2.0}), InvalidDensity);
  CHECK(Density(g, {1.0, 2.0, 3.0}).frame() == "x");
}

TEST_CASE("normalize") {
  SUBCASE("constant 2 on the unit box") {
    const GridPtr g = make_grid(Axis::linear("x", 0, 1, 21));
    const Density n = normalize(Density::constant(g, 2.0));
    for (double v : n.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n.normalized());
  }
  SUBCASE("Gaussian shape") {
    const GridPtr g = make_grid(Axis::linear("x", -8, 8, 401));
    const Density n = normalize(
        Density::tabulate(g, [](const Point& p) { return std::exp(-0.5 * p[0] * p[0]); }));
    CHECK(std::abs(total_mass(n) - 1.0) < 1e-9);
    CHECK(std::abs(n[200] - 1.0 / std::sqrt(2.0 * std::numbers::pi)) < 1e-4);
  }
  SUBCASE("errors") {
    const GridPtr g = make_grid(Axis::linear("x", 0, 1, 5));
    CHECK_THROWS_AS(normalize(Density::constant(g, 0.0)), ZeroMass);
    CHECK_THROWS_AS(normalize(Density(g, {1, 2, INFINITY, 1, 1})), NonFinite);
  }
  SUBCASE("idempotence") {
    const GridPtr g = make_grid(Axis::logarithmic("x", 1, 100, 57));
    Rng rng(5);
    std::vector<double> v(g->size());
    for (double& x : v) x = rng.uniform();
    const Density once = normalize(Density(g, v));
    const Density twice = normalize(once);
    for (std::size_t i = 0; i < once.size(); ++i) {
      CHECK(std::abs(once[i] - twice[i]) <= 1e-12 * once[i]);
    }
  }
}

TEST_CASE("marginalize") {
  const GridPtr g = make_grid(Axis::linear("x", -5, 5, 201), Axis::logarithmic("y", 1, 10, 151));
  auto px = [](double x) { return std::exp(-0.5 * (x - 0.3) * (x - 0.3)); };
  SUBCASE("separable with normalized q") {
    const Axis& ya = g->axis(1);
    double qmass = 0.0;
    for (std::size_t j = 0; j < ya.count(); ++j) qmass += ya.weight(j) / ya.node(j);
    const Density d =
        Density::tabulate(g, [&](const Point& p) { return px(p[0]) / p[1] / qmass; });
    const Density m = marginalize(d, "x");
    CHECK(m.frame() == "x");
    for (std::size_t i = 0; i < m.size(); ++i) {
      CHECK(std::abs(m[i] - px(g->axis(0).node(i))) < 1e-6);
    }
  }
  SUBCASE("mass preserved and commutes with normalize") {
    Rng rng(9);
    std::vector<double> v(g->size());
    for (double& x : v) x = 3.0 * rng.uniform();
    const Density d(g, v);
    for (const char* keep : {"x", "y"}) {
      const Density m = marginalize(d, keep);
      CHECK(total_mass(m) == doctest::Approx(total_mass(d)).epsilon(1e-9));
      const Density a = normalize(marginalize(d, keep));
      const Density b = marginalize(normalize(d), keep);
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-9 * a[i]);
    }
  }
  SUBCASE("unknown axis") {
    CHECK_THROWS_AS(marginalize(Density::constant(g, 1.0), "z"), UnknownAxis);
  }
}

TEST_CASE("evaluate") {
  const GridPtr g = make_grid(Axis::linear("x", 0, 1, 3));
  const Density d(g, {2.0, 4.0, 1.0});
  CHECK(evaluate(d, 0.5) == 4.0);
  CHECK(evaluate(d, 0.25) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(evaluate(d, 1.0) == 1.0);
  CHECK_THROWS_AS(evaluate(d, 1.5), OutOfDomain);
  CHECK(evaluate_or_zero(d, {1.5, 0.0}) == 0.0);

  const GridPtr g2 = make_grid(Axis::linear("x", 0, 1, 2), Axis::logarithmic("y", 1, 4, 3));
  const Density d2(g2, {1, 2, 3, 5, 7, 11});
  CHECK(evaluate(d2, {1.0, 2.0}) == 7.0);
  CHECK(evaluate(d2, {0.5, 2.0}) == doctest::Approx(4.5));
  CHECK(evaluate(d2, {0.5, 1.5}) == doctest::Approx(0.5 * (1.5 + 6.0)));
}

TEST_CASE("slice and argmax") {
  const GridPtr g = make_grid(Axis::linear("x", 0, 1, 3), Axis::linear("y", 0, 1, 3));
  const Density d(g, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  const Density sx = slice(d, "x", 0.25);
  CHECK(sx.frame() == "y");
  CHECK(sx[0] == doctest::Approx(2.5));
  CHECK(sx[2] == doctest::Approx(4.5));
  const Density sy = slice(d, "y", 1.0);
  CHECK(sy[1] == 6.0);
  CHECK(argmax(d) == 8);
  CHECK_THROWS_AS(slice(d, "x", 2.0), OutOfDomain);
}
