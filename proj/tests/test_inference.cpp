#include <cmath>

#include "doctest.h"

#include "infspace/algebra.hpp"
#include "infspace/error.hpp"
#include "infspace/inference.hpp"
#include "oracles.hpp"

using namespace infspace;

TEST_CASE("summaries of a Gaussian") {
  const GridPtr g = make_grid(Axis::linear("x", -6, 8, 2801));
  const Density p = measurement_density({MeasurementKind::gaussian, 1.0, 1.5, "x"}, g);
  const Summary s = summarize(p);
  CHECK(s.axis == "x");
  CHECK(s.mean == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s.mode == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.central68.lower == doctest::Approx(1.0 - 0.994457883 * 1.5).epsilon(1e-4));
  CHECK(s.central68.upper == doctest::Approx(1.0 + 0.994457883 * 1.5).epsilon(1e-4));
  CHECK(s.central95.upper == doctest::Approx(1.0 + 1.959963985 * 1.5).epsilon(1e-4));
  CHECK_FALSE(s.log_frame_mode.has_value());
  CHECK(quantile(p, 0.5) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("summaries of a lognormal") {
  const double w = 0.25;
  const GridPtr g = make_grid(Axis::logarithmic("T", 0.1, 20, 3001));
  const Density p = measurement_density({MeasurementKind::lognormal, 2.0, w, "T"}, g);
  const Summary s = summarize(p);
  CHECK(s.mode == doctest::Approx(oracle::lognormal_mode(2.0, w)).epsilon(1e-5));
  REQUIRE(s.log_frame_mode.has_value());
  CHECK(*s.log_frame_mode == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(*s.geometric_mean == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(s.mean == doctest::Approx(2.0 * std::exp(w * w / 2)).epsilon(1e-5));
  CHECK(quantile(p, 0.5) == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("summaries reject degenerate input") {
  const GridPtr g = make_grid(Axis::linear("x", 0, 1, 11));
  CHECK_THROWS_AS(summarize(Density::constant(g, 0.0)), ZeroMass);
}

TEST_CASE("1D intersection of two Gaussians") {
  const GridPtr g = make_grid(Axis::linear("x", -6, 6, 2401));
  const Density a = measurement_density({MeasurementKind::gaussian, 0.0, 1.0, "x"}, g);
  const Density b = measurement_density({MeasurementKind::gaussian, 1.0, 0.5, "x"}, g);
  const Posterior post = intersect(a, b, Density::constant(g, 1.0));
  // Precision-weighted combination.
  const double mean = oracle::integrate(
                          [](double x) {
                            return x * oracle::gaussian(x, 0.0, 1.0) * oracle::gaussian(x, 1.0, 0.5);
                          },
                          -6, 6) /
                      oracle::integrate(
                          [](double x) {
                            return oracle::gaussian(x, 0.0, 1.0) * oracle::gaussian(x, 1.0, 0.5);
                          },
                          -6, 6);
  CHECK(mean == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(post.summary("x").mean == doctest::Approx(mean).epsilon(1e-6));
  CHECK(total_mass(post.density) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(post.summary("y"), UnknownAxis);
}

TEST_CASE("inference on the analytic fall theory") {
  const FallingBodyLaw law{9.81, 0.001};
  const GridPtr g = default_fall_grid(law, 300);
  const TheoryDensity th = analytic_fall_theory(law, g);

  SUBCASE("T measured, L predicted") {
    const double s = 0.05;
    const Posterior p = predict(th, {MeasurementKind::lognormal, 1.0, s, "T"}, "L");
    const double var = 4 * s * s + law.sigma * law.sigma;
    CHECK(p.summary("L").mode == doctest::Approx(law.length(1.0) * std::exp(-var)).epsilon(1e-3));
    CHECK(*p.summary("L").log_frame_mode == doctest::Approx(law.length(1.0)).epsilon(1e-3));
  }
  SUBCASE("L measured, T predicted") {
    const double s = 0.05;
    const Posterior p = predict(th, {MeasurementKind::lognormal, 4.905, s, "L"}, "T");
    const double var = (s * s + law.sigma * law.sigma) / 4;
    CHECK(p.summary("T").mode == doctest::Approx(std::exp(-var)).epsilon(1e-3));
  }
  SUBCASE("the measurement must share the theory frame") {
    const Density rho = measurement_density({MeasurementKind::lognormal, 1.0, 0.05, "T"}, g)
                            .relabeled("log(L),log(T)");
    CHECK_THROWS_AS(intersect(th, rho), GridMismatch);
  }
}

TEST_CASE("conditional densities") {
  const GridPtr g = make_grid(Axis::linear("x", 0, 1, 11), Axis::linear("y", 0, 1, 11));
  const Density d = Density::tabulate(g, [](const Point& p) { return p[1] > 0.5 ? p[0] : 0.0; });
  const Density c = conditional_density(d, "y", 0.8);
  CHECK(total_mass(c) == doctest::Approx(1.0));
  CHECK(c.grid().axis(0).name() == "x");
  CHECK_THROWS_AS(conditional_density(d, "y", 0.2), ZeroSlice);
  CHECK_THROWS_AS(conditional_density(d, "y", 1.5), OutOfDomain);
}

TEST_CASE("total variation and mu boxcars") {
  const GridPtr g = make_grid(Axis::linear("x", 0, 1, 101));
  const Density a = Density::tabulate(g, [](const Point& p) { return p[0] <= 0.4 ? 1.0 : 0.0; });
  const Density b = Density::tabulate(g, [](const Point& p) { return p[0] >= 0.6 ? 1.0 : 0.0; });
  CHECK(total_variation(a, a) == 0.0);
  CHECK(total_variation(a, b) == doctest::Approx(1.0));
  CHECK(total_variation(a, scale(3.0, a)) < 1e-15);

  const Density box = mu_boxcar(Density::constant(g, 2.0), "x", 0.5, 0.1);
  CHECK(box.at(50) == 2.0);
  CHECK(box.at(39) == 0.0);
  CHECK(box.at(61) == 0.0);
  CHECK(box.at(41) == 2.0);
}

TEST_CASE("conditioning on a curve depends on the coordinates") {
  SUBCASE("multiplicative shear") {
    const ParadoxReport r =
        borel_kolmogorov_demo(standard_paradox_setup(ParadoxMap::multiplicative_shear));
    CHECK(r.tv_conditionals > 0.01);
    CHECK(r.tv_and < 1e-3);
    REQUIRE(r.sweep.size() == 6);
    for (std::size_t k = 1; k < r.sweep.size(); ++k) {
      CHECK(r.sweep[k].tv_to_conditional < r.sweep[k - 1].tv_to_conditional);
    }
    CHECK(r.sweep.back().tv_to_conditional < 1e-3);
  }
  SUBCASE("affine control") {
    const ParadoxReport r = borel_kolmogorov_demo(standard_paradox_setup(ParadoxMap::affine));
    CHECK(r.tv_conditionals < 1e-6);
    CHECK(r.tv_and < 1e-6);
  }
}

TEST_CASE("sampling") {
  SUBCASE("1D Gaussian") {
    const GridPtr g = make_grid(Axis::linear("x", -5, 5, 501));
    const Density p = measurement_density({MeasurementKind::gaussian, 0.3, 1.0, "x"}, g);
    Rng rng(21);
    const SampleSet s = sample_density(p, 20000, rng);
    CHECK(s.points.size() == 20000);
    CHECK(s.acceptance_rate() > 0.5);
    CHECK(ks_statistic(s.points, 0, p) < 0.015);
    // A shifted reference is detectably different.
    const Density q = measurement_density({MeasurementKind::gaussian, 0.5, 1.0, "x"}, g);
    CHECK(ks_statistic(s.points, 0, q) > 0.05);
  }
  SUBCASE("2D posterior marginals") {
    const GridPtr g = make_grid(Axis::linear("x", -4, 4, 161), Axis::logarithmic("T", 0.5, 2, 161));
    const Posterior post = make_posterior(measurement_density(
        {{MeasurementKind::gaussian, 0.0, 1.0, "x"}, {MeasurementKind::lognormal, 1.0, 0.2, "T"}},
        g));
    const SampleSet a = sample_posterior(post, 10000, 5);
    const SampleSet b = sample_posterior(post, 10000, 5);
    CHECK(a.points == b.points);
    CHECK(ks_statistic(a.points, 0, marginalize(post.density, "x")) < 0.02);
    CHECK(ks_statistic(a.points, 1, marginalize(post.density, "T")) < 0.02);
  }
}
