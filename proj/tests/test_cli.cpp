#include <cstdlib>
#include <sstream>

#include "doctest.h"

#include "infspace/cli.hpp"
#include "infspace/io.hpp"
#include "tmpdir.hpp"

using namespace infspace;
using io::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;

  json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const std::string kSmallGrid = "L:log:1:10:121,T:log:0.4:1.5:241";

}  // namespace

TEST_CASE("usage and exit codes") {
  CHECK(run({}).code == cli::kConfigError);
  const Result help = run({"--help"});
  CHECK(help.code == cli::kSuccess);
  CHECK(help.out.find("build-theory") != std::string::npos);
  const Result sub = run({"paradox", "--help"});
  CHECK(sub.code == cli::kSuccess);
  CHECK(sub.out.find("--width-cells") != std::string::npos);

  const Result unknown = run({"frobnicate"});
  CHECK(unknown.code == cli::kConfigError);
  CHECK(unknown.err.find("frobnicate") != std::string::npos);
  CHECK(run({"benford", "--bogus", "1"}).code == cli::kConfigError);
  CHECK(run({"benford", "--n", "10"}).code == cli::kConfigError);
  CHECK(run({"infer", "--theory", tmp_file("nope.json"), "--measure", "T:lognormal:1:0.1"}).code ==
        cli::kConfigError);
}

TEST_CASE("benford") {
  const Result r = run({"benford", "--n", "200000", "--seed", "7"});
  REQUIRE(r.code == cli::kSuccess);
  const json j = r.report();
  CHECK(j["n"] == 200000);
  CHECK(j["max_abs_deviation"].get<double>() < 5e-3);
  // Same seed, same draws.
  CHECK(run({"benford", "--n", "200000", "--seed", "7"}).out == r.out);
  CHECK(run({"benford", "--n", "10", "--seed", "1", "--lower", "-1"}).code == cli::kConfigError);
}

TEST_CASE("theory, inference and prediction round trip") {
  const std::string theory = tmp_file("analytic.json");
  const Result a = run({"analytic-theory", "--sigma", "0.01", "--nodes-per-decade", "100",
                        "--out", theory, "--csv", tmp_file("analytic.csv")});
  REQUIRE(a.code == cli::kSuccess);
  CHECK(a.report()["marginal_deviation"]["L"].get<double>() < 1e-3);
  CHECK(std::filesystem::exists(theory + ".provenance.json"));
  CHECK(std::filesystem::exists(tmp_file("analytic.csv")));

  const Result p = run({"predict", "--theory", theory, "--known", "T:lognormal:1.0:0.05",
                        "--query", "L", "--out", tmp_file("pred.json")});
  REQUIRE(p.code == cli::kSuccess);
  const json s = p.report()["summaries"][0];
  CHECK(s["axis"] == "L");
  CHECK(s["log_frame_mode"].get<double>() == doctest::Approx(4.905).epsilon(5e-3));
  CHECK(io::read_density(tmp_file("pred.json")).dimension() == 1);

  const Result i = run({"infer", "--theory", theory, "--measure", "T:lognormal:1.0:0.05",
                        "--measure", "L:lognormal:4.9:0.05"});
  REQUIRE(i.code == cli::kSuccess);
  CHECK(i.report()["summaries"].size() == 2);

  SUBCASE("model and axis mismatch is a configuration error") {
    CHECK(run({"infer", "--theory", theory, "--measure", "T:gaussian:1.0:0.05"}).code ==
          cli::kConfigError);
    CHECK(run({"predict", "--theory", theory, "--known", "T:lognormal:1.0:0.05", "--query", "Q"})
              .code == cli::kConfigError);
  }
  SUBCASE("incompatible measurements are a numerical error") {
    const Result z = run({"infer", "--theory", theory, "--measure", "T:boxcar:0.5:0.01",
                          "--measure", "L:boxcar:80:1"});
    CHECK(z.code == cli::kNumericalError);
  }
}

TEST_CASE("build-theory") {
  const std::string out = tmp_file("empirical.json");
  const std::vector<std::string> args = {"build-theory", "--mode", "set_L", "--n", "50",
                                         "--seed", "3", "--grid", kSmallGrid,
                                         "--instrument", "L:lognormal:0:0.01",
                                         "--instrument", "T:lognormal:0:0.01", "--out", out};
  const Result r = run(args);
  REQUIRE(r.code == cli::kSuccess);
  CHECK(r.report()["n_experiments"] == 50);
  CHECK(r.report()["mass"].get<double>() == doctest::Approx(50.0).epsilon(1e-9));
  const TheoryDensity t = io::read_theory(out);
  CHECK(t.provenance.kind == ProvenanceKind::empirical);
  CHECK(t.provenance.n_experiments == 50);
  CHECK(run(args).out == r.out);

  CHECK(run({"build-theory", "--n", "5", "--grid", kSmallGrid, "--out", out}).code ==
        cli::kConfigError);
  CHECK(run({"build-theory", "--n", "5", "--seed", "1", "--grid", kSmallGrid, "--instrument",
             "Q:lognormal:0:0.01", "--out", out})
            .code == cli::kConfigError);
}

TEST_CASE("paradox") {
  const Result shear = run({"paradox", "--map", "multiplicative_shear"});
  REQUIRE(shear.code == cli::kSuccess);
  CHECK(shear.report()["tv_conditionals"].get<double>() > 0.01);
  CHECK(shear.report()["tv_and"].get<double>() < 1e-3);
  CHECK(shear.report()["width_sweep"].size() == 6);
  const Result affine = run({"paradox", "--map", "affine", "--out", tmp_file("paradox.json")});
  REQUIRE(affine.code == cli::kSuccess);
  CHECK(affine.report()["tv_conditionals"].get<double>() < 1e-6);
  CHECK(io::read_json(tmp_file("paradox.json"))["map"] == "affine");
  CHECK(run({"paradox", "--map", "twist"}).code == cli::kConfigError);
}

TEST_CASE("axioms") {
  const Result r = run({"axioms", "--samples", "20", "--nodes", "32", "--seed", "4"});
  REQUIRE(r.code == cli::kSuccess);
  const json j = r.report();
  REQUIRE(j.size() == 3);
  CHECK(j[0]["all_passed"] == true);
  CHECK(j[1]["all_passed"] == true);
  CHECK(j[2]["all_passed"] == false);
  CHECK(run({"axioms", "--seed", "4", "--realization", "odd"}).code == cli::kConfigError);
}

TEST_CASE("convert") {
  const GridPtr g = make_grid(Axis::logarithmic("T", 0.1, 10, 201));
  io::write_density(measurement_density({MeasurementKind::lognormal, 2.0, 0.3, "T"}, g),
                    tmp_file("t.json"));
  const Result r = run({"convert", "--in", tmp_file("t.json"), "--map", "reciprocal", "--out",
                        tmp_file("nu.json")});
  REQUIRE(r.code == cli::kSuccess);
  const Density nu = io::read_density(tmp_file("nu.json"));
  CHECK(nu.grid().axis(0).lower() == doctest::Approx(0.1));
  CHECK(total_mass(nu) == doctest::Approx(total_mass(io::read_density(tmp_file("t.json")))).epsilon(1e-6));
  CHECK(run({"convert", "--in", tmp_file("t.json"), "--map", "reciprocal", "--target",
             "nu:log:1:2:11", "--out", tmp_file("bad.json")})
            .code == cli::kConfigError);
}

TEST_CASE("config files") {
  io::write_json(json{{"command", "benford"}, {"n", 1000}, {"seed", 5}}, tmp_file("cfg.json"));
  const Result base = run({"--config", tmp_file("cfg.json")});
  REQUIRE(base.code == cli::kSuccess);
  CHECK(base.report()["n"] == 1000);

  // Flags given on the command line win over config values.
  const Result flag_only = run({"--config", tmp_file("cfg.json"), "--n", "300"});
  REQUIRE(flag_only.code == cli::kSuccess);
  CHECK(flag_only.report()["n"] == 300);
  const Result over = run({"benford", "--config", tmp_file("cfg.json"), "--n", "500"});
  REQUIRE(over.code == cli::kSuccess);
  CHECK(over.report()["n"] == 500);

  setenv(cli::kConfigDirEnv, test_tmp_dir("infspace_tests").c_str(), 1);
  CHECK(run({"--config", "cfg.json"}).code == cli::kSuccess);
  unsetenv(cli::kConfigDirEnv);

  io::write_json(json::array({1, 2}), tmp_file("array.json"));
  CHECK(run({"--config", tmp_file("array.json")}).code == cli::kConfigError);
  CHECK(run({"--config", tmp_file("missing.json")}).code == cli::kConfigError);
  CHECK(run({"benford", "--config"}).code == cli::kConfigError);
}
