#include <cmath>
#include <numeric>

#include "doctest.h"

#include "infspace/error.hpp"
#include "infspace/priors.hpp"
#include "oracles.hpp"

using namespace infspace;

TEST_CASE("make_prior values") {
  const GridPtr g = make_grid(Axis::logarithmic("x", 0.5, 8.0, 41));
  const Density j = make_prior({PriorKind::jeffreys_reciprocal, {}}, g);
  for (std::size_t i = 0; i < g->size(); ++i) {
    CHECK(j[i] == doctest::Approx(1.0 / g->axis(0).node(i)).epsilon(1e-15));
  }
  // Jeffreys mass over [a, b] is log(b / a).
  CHECK(total_mass(j) == doctest::Approx(std::log(16.0)).epsilon(1e-12));

  const Density u = make_prior({PriorKind::uniform, {{1.0, 4.0}}}, g);
  CHECK(u.at(0) == 0.0);
  CHECK(u.at(40) == 0.0);
  CHECK(u.at(20) == 1.0);

  const GridPtr s = make_grid(Axis::linear("r", 0, 2, 21), Axis::linear("theta", 0, M_PI, 31));
  const Density sp = make_prior({PriorKind::spherical_position, {}}, s);
  const Point p = s->coordinates(s->flat_index(10, 7));
  CHECK(sp.at(10, 7) == doctest::Approx(p[0] * p[0] * std::sin(p[1])));
}

TEST_CASE("make_prior errors") {
  const GridPtr g = make_grid(Axis::linear("x", -1, 1, 11));
  CHECK_THROWS_AS(make_prior({PriorKind::jeffreys_reciprocal, {}}, g), InvalidBounds);
  CHECK_THROWS_AS(make_prior({PriorKind::uniform, {{2.0, 1.0}}}, g), InvalidBounds);
  CHECK_THROWS_AS(make_prior({PriorKind::uniform, {{0.0, 1.0}, {0.0, 1.0}}}, g), InvalidBounds);
  CHECK_THROWS_AS(make_prior({PriorKind::spherical_position, {{-1.0, 1.0}}}, g), InvalidBounds);
  CHECK_THROWS_AS(prior_kind_from_string("flat"), ConfigInvalid);
  CHECK(prior_kind_from_string("jeffreys") == PriorKind::jeffreys_reciprocal);
}

TEST_CASE("noninformative follows axis spacing") {
  const GridPtr g = make_grid(Axis::logarithmic("T", 0.1, 10, 21), Axis::linear("s", -1, 1, 5));
  const Density n = noninformative(g);
  for (std::size_t f = 0; f < g->size(); ++f) {
    CHECK(n[f] == doctest::Approx(1.0 / g->coordinates(f)[0]).epsilon(1e-15));
  }
  CHECK(noninformative_value(g->axis(1), 0.3) == 1.0);
}

TEST_CASE("measurement densities") {
  const GridPtr lin = make_grid(Axis::linear("x", -5, 5, 1001));
  const GridPtr lg = make_grid(Axis::logarithmic("T", 0.1, 10, 1001));

  SUBCASE("gaussian shape and mass") {
    const Density d = measurement_density({MeasurementKind::gaussian, 0.5, 0.7, "x"}, lin);
    const double want =
        oracle::integrate([](double x) { return oracle::gaussian(x, 0.5, 0.7); }, -5.0, 5.0) *
        0.7 * std::sqrt(2.0 * M_PI);
    CHECK(total_mass(d) == doctest::Approx(want).epsilon(1e-5));
    CHECK(lin->axis(0).node(argmax(d)) == doctest::Approx(0.5));
  }
  SUBCASE("lognormal mode in the linear frame") {
    const double w = 0.3;
    const Density d = measurement_density({MeasurementKind::lognormal, 2.0, w, "T"}, lg);
    const double mode = oracle::argmax(
        [&](double t) { return std::exp(-std::pow(std::log(t / 2.0), 2) / (2 * w * w)) / t; },
        0.5, 4.0);
    CHECK(mode == doctest::Approx(oracle::lognormal_mode(2.0, w)).epsilon(1e-6));
    CHECK(std::abs(lg->axis(0).node(argmax(d)) - mode) < 0.01 * mode);
  }
  SUBCASE("boxcar") {
    const Density d = measurement_density({MeasurementKind::boxcar, 2.0, 0.5, "T"}, lg);
    for (std::size_t i = 0; i < lg->size(); ++i) {
      const double t = lg->axis(0).node(i);
      if (t < 1.49 || t > 2.51) CHECK(d[i] == 0.0);
      if (t > 1.51 && t < 2.49) CHECK(d[i] == doctest::Approx(1.0 / t));
    }
    const Density narrow = measurement_density({MeasurementKind::boxcar, 2.0, 1e-9, "T"}, lg);
    std::size_t nonzero = 0;
    for (double v : narrow.values()) nonzero += v > 0.0;
    CHECK(nonzero == 1);
  }
  SUBCASE("infinite width is noninformative") {
    const Density d = measurement_density({MeasurementKind::lognormal, 2.0,
                                           std::numeric_limits<double>::infinity(), "T"},
                                          lg);
    CHECK(max_relative_discrepancy(noninformative(lg), d) == 0.0);
  }
  SUBCASE("model and axis mismatches") {
    CHECK_THROWS_AS(measurement_density({MeasurementKind::gaussian, 1.0, 0.1, "T"}, lg),
                    ModelAxisMismatch);
    CHECK_THROWS_AS(measurement_density({MeasurementKind::lognormal, 1.0, 0.1, "x"}, lin),
                    ModelAxisMismatch);
    CHECK_THROWS_AS(measurement_density({MeasurementKind::gaussian, 1.0, 0.0, "x"}, lin),
                    ModelAxisMismatch);
    CHECK_THROWS_AS(measurement_density({MeasurementKind::gaussian, 1.0, 0.1, "y"}, lin),
                    ModelAxisMismatch);
  }
  SUBCASE("2D product with a noninformative second axis") {
    const GridPtr g2 = make_grid(Axis::logarithmic("L", 0.1, 10, 51), Axis::logarithmic("T", 0.1, 10, 61));
    const Density d = measurement_density({MeasurementKind::lognormal, 1.0, 0.2, "T"}, g2);
    const Point p = g2->coordinates(g2->flat_index(13, 30));
    CHECK(d.at(13, 30) == doctest::Approx(1.0 / p[0] / p[1]).epsilon(1e-12));
  }
}

TEST_CASE("Benford probabilities") {
  const auto p = benford_digit_probabilities();
  CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p[0] == doctest::Approx(0.30102999566398120).epsilon(1e-15));
  CHECK(p[8] == doctest::Approx(0.04575749056067513).epsilon(1e-14));
  for (int k = 0; k < 8; ++k) CHECK(p[k] > p[k + 1]);
}

TEST_CASE("first digits") {
  CHECK(first_digit(1.0) == 1);
  CHECK(first_digit(9.999) == 9);
  CHECK(first_digit(0.00345) == 3);
  CHECK(first_digit(7.2e11) == 7);
  CHECK(first_digit(1000.0) == 1);
  CHECK(first_digit(0.1) == 1);
}

TEST_CASE("prior sampling") {
  SUBCASE("jeffreys on whole decades matches Benford") {
    const auto s = sample_prior({PriorKind::jeffreys_reciprocal, {{1.0, 1e4}}}, 200000, 11);
    const auto f = first_digit_frequencies(s);
    const auto p = benford_digit_probabilities();
    for (int k = 0; k < 9; ++k) CHECK(std::abs(f[k] - p[k]) < 5e-3);
  }
  SUBCASE("draws stay in bounds and are reproducible") {
    const PriorSpec spec{PriorKind::spherical_position, {{0.5, 2.0}, {0.0, M_PI}}};
    const auto a = sample_prior(spec, 1000, 5);
    const auto b = sample_prior(spec, 1000, 5);
    CHECK(a == b);
    double mean_r3 = 0.0;
    for (const Point& p : a) {
      CHECK(p[0] >= 0.5);
      CHECK(p[0] <= 2.0);
      CHECK(p[1] >= 0.0);
      CHECK(p[1] <= M_PI);
      mean_r3 += p[0] * p[0] * p[0] / 1000.0;
    }
    // r^3 is uniform on [0.125, 8].
    CHECK(std::abs(mean_r3 - 4.0625) < 0.3);
  }
  SUBCASE("uniform mean") {
    const auto s = sample_prior({PriorKind::uniform, {{-2.0, 6.0}}}, 100000, 3);
    double m = 0.0;
    for (const Point& p : s) m += p[0] / s.size();
    CHECK(std::abs(m - 2.0) < 0.05);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(sample_prior({PriorKind::uniform, {}}, 10, 1), InvalidBounds);
    CHECK_THROWS_AS(sample_prior({PriorKind::jeffreys_reciprocal, {{0.0, 1.0}}}, 10, 1),
                    InvalidBounds);
  }
}
