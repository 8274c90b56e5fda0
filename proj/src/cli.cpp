#include "infspace/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "infspace/algebra.hpp"
#include "infspace/coordinates.hpp"
#include "infspace/error.hpp"
#include "infspace/inference.hpp"
#include "infspace/io.hpp"
#include "infspace/priors.hpp"
#include "infspace/theory.hpp"

namespace infspace::cli {
namespace {

using io::json;

std::string resolve_config_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path) || fs::path(path).is_absolute()) return path;
  if (const char* dir = std::getenv(kConfigDirEnv)) {
    const fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;
}

std::string scalar_token(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    std::ostringstream s;
    s.precision(17);
    s << v.get<double>();
    return s.str();
  }
  if (v.is_object() && (key == "measure" || key == "known")) {
    const MeasurementModel m = io::measurement_from_json(v);
    std::ostringstream s;
    s.precision(17);
    s << m.parameter << ':' << to_string(m.kind);
    if (m.kind != MeasurementKind::noninformative) s << ':' << m.center << ':' << m.width;
    return s.str();
  }
  throw ConfigInvalid("config field '" + key + "': unsupported value " + v.dump());
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Folds a JSON config into the argument list: every field becomes the
// option of the same name unless that option is already on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args,
                                      const std::vector<std::string>& commands) {
  const auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (std::next(it) == args.end()) throw ConfigInvalid("--config needs a file name");
  const std::string path = resolve_config_path(*std::next(it));
  args.erase(it, std::next(it, 2));

  json config;
  try {
    config = io::read_json(path);
  } catch (const SchemaError& e) {
    throw ConfigInvalid(std::string("config: ") + e.what());
  }
  if (!config.is_object()) throw ConfigInvalid("config '" + path + "': expected an object");

  const bool has_command = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return std::find(commands.begin(), commands.end(), a) != commands.end();
  });
  if (config.contains("command")) {
    if (!config["command"].is_string()) throw ConfigInvalid("config field 'command': not a string");
    if (!has_command) args.insert(args.begin(), config["command"].get<std::string>());
  }

  for (const auto& [key, value] : config.items()) {
    if (key == "command") continue;
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    const std::string flag = "--" + name;
    if (given_on_command_line(args, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
      continue;
    }
    if (value.is_array()) {
      for (const json& v : value) {
        args.push_back(flag);
        args.push_back(scalar_token(v, name));
      }
      continue;
    }
    args.push_back(flag);
    args.push_back(scalar_token(value, name));
  }
  return args;
}

struct Shared {
  Tolerances tol = default_tolerances();
};

void maybe_csv(const Density& d, const std::string& path) {
  if (!path.empty()) io::write_csv(d, path);
}

FallFrame frame_from_string(const std::string& s) {
  if (s == "linear") return FallFrame::linear;
  if (s == "logarithmic" || s == "log") return FallFrame::logarithmic;
  throw ConfigInvalid("--frame: expected linear or logarithmic, got '" + s + "'");
}

// Default grid expressed in (log L, log T).
GridPtr log_frame_grid(const Grid& g) {
  auto log_axis = [](const Axis& a) {
    return Axis::linear("log" + a.name(), std::log(a.lower()), std::log(a.upper()), a.count());
  };
  return make_grid(log_axis(g.axis(0)), log_axis(g.axis(1)));
}

void add_analytic_theory(CLI::App& app, Shared&, std::ostream& out) {
  struct Opts {
    double sigma = 0.001;
    double g = 9.81;
    std::string grid = "default";
    std::size_t nodes_per_decade = 300;
    std::string frame = "linear";
    std::string out;
    std::string csv;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("analytic-theory", "Tabulate the lognormal fall theory");
  cmd->add_option("--sigma", o->sigma, "Theory width (log units)");
  cmd->add_option("--g", o->g, "Acceleration of gravity");
  cmd->add_option("--grid", o->grid, "'default', axis list or grid JSON file");
  cmd->add_option("--nodes-per-decade", o->nodes_per_decade, "Resolution of the default grid");
  cmd->add_option("--frame", o->frame, "linear (L, T) or logarithmic (log L, log T)");
  cmd->add_option("--out", o->out, "Theory file")->required();
  cmd->add_option("--csv", o->csv, "Optional CSV export of the joint");
  cmd->callback([o, &out] {
    const FallingBodyLaw law{o->g, o->sigma};
    law.validate();
    const FallFrame frame = frame_from_string(o->frame);
    GridPtr grid = io::parse_grid(o->grid, law, o->nodes_per_decade);
    if (frame == FallFrame::logarithmic && o->grid == "default") grid = log_frame_grid(*grid);
    const TheoryDensity t = analytic_fall_theory(law, grid, frame);
    io::write_theory(t, o->out);
    maybe_csv(t.joint, o->csv);
    const bool recip = frame == FallFrame::linear;
    const Grid& g = *grid;
    out << json{{"out", o->out},
                {"nodes", g.size()},
                {"marginal_deviation",
                 {{g.axis(0).name(), max_shape_deviation(marginalize(t.joint, g.axis(0).name()), recip)},
                  {g.axis(1).name(), max_shape_deviation(marginalize(t.joint, g.axis(1).name()), recip)}}}}
                .dump(2)
        << '\n';
  });
}

void add_build_theory(CLI::App& app, Shared&, std::ostream& out) {
  struct Opts {
    std::string mode = "set_L";
    std::size_t n = 1000;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> instruments;
    double g = 9.81;
    std::string grid = "default";
    std::size_t nodes_per_decade = 300;
    std::string out;
    std::string csv;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("build-theory", "Accumulate a simulated measurement campaign");
  cmd->add_option("--mode", o->mode, "set_L or set_T");
  cmd->add_option("--n", o->n, "Number of experiments");
  cmd->add_option("--seed", o->seed, "Master seed");
  cmd->add_option("--instrument", o->instruments,
                  "Instrument model axis:kind:center:width (center ignored)");
  cmd->add_option("--g", o->g, "Acceleration of gravity");
  cmd->add_option("--grid", o->grid, "'default', axis list or grid JSON file");
  cmd->add_option("--nodes-per-decade", o->nodes_per_decade, "Resolution of the default grid");
  cmd->add_option("--out", o->out, "Theory file")->required();
  cmd->add_option("--csv", o->csv, "Optional CSV export of the joint");
  cmd->callback([o, &out] {
    if (!o->seed) throw ConfigInvalid("build-theory: --seed is required");
    Campaign c;
    c.mode = campaign_mode_from_string(o->mode);
    c.n_experiments = o->n;
    c.master_seed = *o->seed;
    c.law.g = o->g;
    for (const std::string& spec : o->instruments) {
      const MeasurementModel m = io::parse_measurement(spec);
      if (m.parameter == c.instruments.length.parameter) {
        c.instruments.length = m;
      } else if (m.parameter == c.instruments.period.parameter) {
        c.instruments.period = m;
      } else {
        throw ConfigInvalid("--instrument '" + spec + "': axis must be L or T");
      }
    }
    const GridPtr grid = io::parse_grid(o->grid, c.law, o->nodes_per_decade);
    const TheoryDensity t = run_campaign(c, grid).back();
    io::write_theory(t, o->out);
    maybe_csv(t.joint, o->csv);
    out << json{{"out", o->out},
                {"n_experiments", t.provenance.n_experiments},
                {"mass", total_mass(t.joint)},
                {"sigma_effective", fit_sigma_effective(t.joint, c.law)}}
                .dump(2)
        << '\n';
  });
}

void report_posterior(const Posterior& p, const std::string& path, const std::string& csv,
                      std::ostream& out) {
  if (!path.empty()) io::write_density(p.density, path);
  maybe_csv(p.density, csv);
  out << io::posterior_to_json(p).dump(2) << '\n';
}

void add_infer(CLI::App& app, Shared&, std::ostream& out) {
  struct Opts {
    std::string theory;
    std::vector<std::string> measures;
    std::string out;
    std::string csv;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("infer", "Intersect a theory with measurements");
  cmd->add_option("--theory", o->theory, "Theory file")->required();
  cmd->add_option("--measure", o->measures, "Measurement axis:kind:center:width")->required();
  cmd->add_option("--out", o->out, "Posterior density file");
  cmd->add_option("--csv", o->csv, "Optional CSV export of the posterior");
  cmd->callback([o, &out] {
    const TheoryDensity t = io::read_theory(o->theory);
    std::vector<MeasurementModel> models;
    for (const auto& s : o->measures) models.push_back(io::parse_measurement(s));
    const Density rho =
        measurement_density(models, t.joint.grid_ptr()).relabeled(t.joint.frame());
    report_posterior(intersect(t, rho), o->out, o->csv, out);
  });
}

void add_predict(CLI::App& app, Shared&, std::ostream& out) {
  struct Opts {
    std::string theory;
    std::string known;
    std::string query;
    std::string out;
    std::string csv;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("predict", "Marginal of one axis given a measurement of the other");
  cmd->add_option("--theory", o->theory, "Theory file")->required();
  cmd->add_option("--known", o->known, "Measurement axis:kind:center:width")->required();
  cmd->add_option("--query", o->query, "Axis to predict")->required();
  cmd->add_option("--out", o->out, "Posterior marginal file");
  cmd->add_option("--csv", o->csv, "Optional CSV export");
  cmd->callback([o, &out] {
    const TheoryDensity t = io::read_theory(o->theory);
    if (!t.joint.grid().has_axis(o->query)) {
      throw ConfigInvalid("--query: theory has no axis '" + o->query + "'");
    }
    report_posterior(predict(t, io::parse_measurement(o->known), o->query), o->out, o->csv, out);
  });
}

void add_benford(CLI::App& app, Shared&, std::ostream& out) {
  struct Opts {
    double lower = 1.0;
    double upper = 1e6;
    double n = 1e6;
    std::optional<std::uint64_t> seed;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("benford", "First-digit frequencies of 1/x prior samples");
  cmd->add_option("--lower", o->lower, "Lower bound");
  cmd->add_option("--upper", o->upper, "Upper bound");
  cmd->add_option("--n", o->n, "Number of samples");
  cmd->add_option("--seed", o->seed, "Seed");
  cmd->callback([o, &out] {
    if (!o->seed) throw ConfigInvalid("benford: --seed is required");
    if (!(o->n >= 0.0) || o->n != std::floor(o->n)) {
      throw ConfigInvalid("benford: --n must be a nonnegative integer");
    }
    const PriorSpec spec{PriorKind::jeffreys_reciprocal, {{o->lower, o->upper}}};
    const auto samples = sample_prior(spec, static_cast<std::size_t>(o->n), *o->seed);
    const auto f = first_digit_frequencies(samples);
    const auto p = benford_digit_probabilities();
    double dev = 0.0;
    for (int d = 0; d < 9; ++d) dev = std::max(dev, std::abs(f[d] - p[d]));
    out << json{{"n", samples.size()},
                {"frequencies", f},
                {"expected", p},
                {"max_abs_deviation", dev}}
                .dump(2)
        << '\n';
  });
}

void add_paradox(CLI::App& app, Shared& shared, std::ostream& out) {
  struct Opts {
    std::string map = "multiplicative_shear";
    double slice = 1.0;
    double width_cells = 2.0;
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("paradox", "Conditioning versus AND under a change of variables");
  cmd->add_option("--map", o->map, "multiplicative_shear or affine");
  cmd->add_option("--slice", o->slice, "Slice y = value in the original frame");
  cmd->add_option("--width-cells", o->width_cells, "Full boxcar width in cells");
  cmd->add_option("--out", o->out, "Report file");
  cmd->callback([o, &shared, &out] {
    ParadoxMap kind;
    if (o->map == "multiplicative_shear") {
      kind = ParadoxMap::multiplicative_shear;
    } else if (o->map == "affine") {
      kind = ParadoxMap::affine;
    } else {
      throw ConfigInvalid("--map: expected multiplicative_shear or affine");
    }
    if (!(o->width_cells > 0.0)) throw ConfigInvalid("--width-cells must be positive");
    const ParadoxReport r = borel_kolmogorov_demo(
        standard_paradox_setup(kind, o->slice, o->width_cells), shared.tol);
    json j = io::paradox_report_to_json(r);
    j["map"] = o->map;
    if (!o->out.empty()) io::write_json(j, o->out);
    out << j.dump(2) << '\n';
  });
}

void add_axioms(CLI::App& app, Shared&, std::ostream& out) {
  struct Opts {
    std::size_t samples = 100;
    std::size_t nodes = 64;
    std::optional<std::uint64_t> seed;
    std::string realization = "all";
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("axioms", "Check the inference-space axioms on random states");
  cmd->add_option("--samples", o->samples, "Number of random triples");
  cmd->add_option("--nodes", o->nodes, "Grid size");
  cmd->add_option("--seed", o->seed, "Seed");
  cmd->add_option("--realization", o->realization,
                  "sum_product, max_min, unnormalized_product or all");
  cmd->add_option("--out", o->out, "Report file");
  cmd->callback([o, &out] {
    if (!o->seed) throw ConfigInvalid("axioms: --seed is required");
    if (o->nodes < 2) throw ConfigInvalid("axioms: --nodes must be at least 2");
    const GridPtr grid = make_grid(Axis::linear("x", 0.0, 1.0, o->nodes));
    Rng rng(*o->seed);
    const auto triples = random_triples(grid, o->samples, rng);
    Density mu = random_density(grid, rng, 0.0);

    json reports = json::array();
    auto run_one = [&](const Realization& r) {
      reports.push_back(io::axiom_report_to_json(check_axioms(r, triples)));
    };
    const std::string& which = o->realization;
    bool any = false;
    if (which == "all" || which == "sum_product") {
      run_one(Realization::sum_product(mu));
      any = true;
    }
    if (which == "all" || which == "max_min") {
      run_one(Realization::max_min(grid));
      any = true;
    }
    if (which == "all" || which == "unnormalized_product") {
      run_one(unnormalized_product_realization(mu));
      any = true;
    }
    if (!any) throw ConfigInvalid("--realization: unknown value '" + which + "'");
    if (!o->out.empty()) io::write_json(reports, o->out);
    out << reports.dump(2) << '\n';
  });
}

void add_convert(CLI::App& app, Shared& shared, std::ostream& out) {
  struct Opts {
    std::string in;
    std::string map;
    std::string target;
    std::string out;
    std::string csv;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("convert", "Push a density file through a change of variables");
  cmd->add_option("--in", o->in, "Input density file")->required();
  cmd->add_option("--map", o->map, "Map spec (1D, or 2D for 2D densities)")->required();
  cmd->add_option("--target", o->target, "Target grid (default: image of the source axes)");
  cmd->add_option("--out", o->out, "Output density file")->required();
  cmd->add_option("--csv", o->csv, "Optional CSV export");
  cmd->callback([o, &shared, &out] {
    const Density d = io::read_density(o->in);
    const FallingBodyLaw law;
    Density result = d;
    if (d.dimension() == 1) {
      const CoordinateMap m = io::parse_map(o->map);
      const GridPtr target =
          o->target.empty()
              ? make_grid(image_axis(d.grid().axis(0), m, d.grid().axis(0).name() + "'"))
              : io::parse_grid(o->target, law);
      result = push_forward(d, m, target, shared.tol);
    } else {
      const Map2D m = io::parse_map2d(o->map);
      GridPtr target;
      if (!o->target.empty()) {
        target = io::parse_grid(o->target, law);
      } else if (!m.factors().empty()) {
        const Grid& g = d.grid();
        target = make_grid(image_axis(g.axis(0), m.factors()[0], g.axis(0).name() + "'"),
                           image_axis(g.axis(1), m.factors()[1], g.axis(1).name() + "'"));
      } else {
        throw ConfigInvalid("convert: --target is required for non-product 2D maps");
      }
      result = push_forward(d, m, target, shared.tol);
    }
    io::write_density(result, o->out);
    maybe_csv(result, o->csv);
    out << json{{"out", o->out},
                {"mass_before", total_mass(d)},
                {"mass_after", total_mass(result)}}
                .dump(2)
        << '\n';
  });
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Shared shared;
  CLI::App app{"Inference spaces: states of information on parameter grids"};
  app.name("infspace");
  app.require_subcommand(1);
  app.add_option("--tol-normalization", shared.tol.normalization, "Normalization tolerance");
  app.add_option("--tol-zero-mass", shared.tol.zero_mass, "Mass treated as zero");
  app.add_option("--tol-domain-snap", shared.tol.domain_snap,
                 "Relative slack when locating points on the grid box");
  add_analytic_theory(app, shared, out);
  add_build_theory(app, shared, out);
  add_infer(app, shared, out);
  add_predict(app, shared, out);
  add_benford(app, shared, out);
  add_paradox(app, shared, out);
  add_axioms(app, shared, out);
  add_convert(app, shared, out);

  try {
    std::vector<std::string> commands;
    for (const CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
      commands.push_back(sub->get_name());
    }
    std::vector<std::string> args = merge_config(raw_args, commands);
    const auto command = std::find_if(args.begin(), args.end(), [](const std::string& a) {
      return !a.empty() && a[0] != '-';
    });
    if (command != args.end() && command == args.begin() &&
        app.get_subcommand_no_throw(*command) == nullptr) {
      throw UnknownCommand("unknown command '" + *command + "'");
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    const auto active = app.get_subcommands();
    out << (active.empty() ? app.help() : active.front()->help());
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "infspace: " << e.what() << '\n';
    return kConfigError;
  } catch (const InputError& e) {
    err << "infspace: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "infspace: numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "infspace: " << e.what() << '\n';
    return kFailure;
  }
  return kSuccess;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace infspace::cli
