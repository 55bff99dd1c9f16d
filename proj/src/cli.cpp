#include "elb/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "elb/api.hpp"
#include "elb/harness.hpp"
#include "elb/io.hpp"

namespace elb::cli {
namespace {

using io::json;

struct Outputs {
  std::ostream& out;
  std::ostream& err;

  void emit(const std::string& path, const std::string& text) const {
    if (path == "-") {
      out << text;
      return;
    }
    io::write_text_atomic(path, text);
  }
};

CubicBezier load_curve(const std::string& path) { return io::curve_from_json(io::parse(io::read_text(path))); }

std::string g17(double v) { return io::format_double(v); }

int cmd_residual(const Outputs& o, const std::string& input, bool as_json) {
  const CubicBezier c = load_curve(input);
  const json r = api::residual(c);
  if (as_json) {
    o.out << io::dump(r) << '\n';
    return kExitOk;
  }
  o.out << "e_lambda=" << g17(r["e_lambda"].get<double>()) << " class=" << r["class"].get<std::string>();
  if (r["straight_line"].get<bool>()) o.out << " straight_line=true";
  o.out << '\n';
  return kExitOk;
}

struct ProjectArgs {
  std::string input;
  std::string method = "feedback";
  double threshold = 0.0;
  std::string profile = "strict";
  std::string out = "-";
  std::string report;
  std::string overlay;
};

int cmd_project(const Outputs& o, const ProjectArgs& a) {
  api::ProjectRequest req;
  req.curve = load_curve(a.input);
  req.method = api::parse_method(a.method);
  req.profile = parse_angle_profile(a.profile);
  req.threshold = a.threshold;
  if (!(req.threshold >= 0.0 && req.threshold < 1.0)) throw io::InputError("--threshold must lie in [0, 1)");
  const json r = api::project(req);
  o.emit(a.out, io::dump(r["output"]) + "\n");
  if (!a.report.empty()) o.emit(a.report, io::dump(r["report"], 2) + "\n");
  if (!a.overlay.empty()) o.emit(a.overlay, io::dump(r["first_guess"]) + "\n");
  o.err << "e_lambda=" << g17(r["e_lambda"].get<double>()) << " input_e_lambda="
        << g17(r["report"]["input_e_lambda"].get<double>());
  if (r["report"].contains("terminated_by")) o.err << " terminated_by=" << r["report"]["terminated_by"].get<std::string>();
  o.err << '\n';
  return kExitOk;
}

int cmd_approximate(const Outputs& o, const std::string& input, const std::string& out, bool as_json) {
  const CubicBezier c = load_curve(input);
  const FitResult fit = fit_elastica(c);
  if (as_json) {
    o.emit(out, io::dump(io::to_json(fit)) + "\n");
    return kExitOk;
  }
  o.emit(out, io::dump(io::to_json(fit.segment)) + "\n");
  o.err << "l2=" << g17(fit.l2) << " h1=" << g17(fit.h1) << " k=" << g17(fit.segment.k) << '\n';
  return kExitOk;
}

int cmd_zone(const Outputs& o, const std::string& curve_path, const std::string& out) {
  if (curve_path.empty()) {
    o.emit(out, io::dump(api::zone_boundary()) + "\n");
    return kExitOk;
  }
  const CubicBezier c = load_curve(curve_path);
  const PolygonGeometry g = polygon_geometry(standard_position(c).curve);
  const bool strict = angle_constraints(g, AngleProfile::Strict);
  o.out << "in_zone=" << (strict && zone_contains(g) ? "true" : "false") << " strict_admissible=" << (strict ? "true" : "false")
        << " phi1=" << g17(g.phi1) << " phi2=" << g17(g.phi2) << " inflectional=" << (g.inflectional ? "true" : "false")
        << '\n';
  return kExitOk;
}

struct SampleArgs {
  std::size_t count = 100;
  std::string generator = "random_quad_unit_disc";
  std::uint64_t seed = 1;
  std::string profile = "none";
  std::string out = "-";
};

int cmd_sample(const Outputs& o, const SampleArgs& a) {
  const harness::SampleSpec spec{a.count, harness::parse_generator(a.generator), a.seed,
                                 harness::parse_constraint_profile(a.profile)};
  const harness::Sample s = harness::sample_curves(spec);
  json curves = json::array();
  for (const CubicBezier& c : s.curves) curves.push_back(io::to_json(c));
  const json j = {{"seed", a.seed},
                  {"generator", a.generator},
                  {"constraint_profile", a.profile},
                  {"candidates", s.candidates},
                  {"curves", curves}};
  o.emit(a.out, io::dump(j) + "\n");
  return kExitOk;
}

struct ExperimentArgs {
  std::string name;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string out = ".";
  std::string generator;
  std::string profile;
  double threshold = 0.0;
  bool serial = false;
};

int cmd_experiment(const Outputs& o, const ExperimentArgs& a) {
  using namespace harness;
  const Execution mode = a.serial ? Execution::Serial : Execution::Parallel;
  auto spec_for = [&](std::size_t n, Generator g, ConstraintProfile p) {
    return SampleSpec{a.n ? a.n : n, a.generator.empty() ? g : parse_generator(a.generator), a.seed,
                      a.profile.empty() ? p : parse_constraint_profile(a.profile)};
  };
  ExperimentResult r;
  if (a.name == "correlation") {
    r = run_correlation_experiment(spec_for(2000, Generator::InnerPointsUnitBox, ConstraintProfile::Strict), mode);
  } else if (a.name == "projection") {
    FeedbackConfig cfg;
    cfg.threshold_E = a.threshold;
    r = run_projection_experiment(spec_for(10000, Generator::RandomQuadUnitDisc, ConstraintProfile::Strict), cfg,
                                  mode);
  } else if (a.name == "zone_sweep") {
    r = run_zone_sweep(a.n ? a.n : 100000, a.seed, mode);
  } else {
    throw io::InputError("unknown experiment: " + a.name);
  }
  std::filesystem::create_directories(a.out);
  std::ostringstream csv;
  write_csv(csv, r.rows);
  const std::filesystem::path dir(a.out);
  io::write_text_atomic((dir / (a.name + ".csv")).string(), csv.str());
  const std::string summary = io::dump(io::to_json(r.summary), 2) + "\n";
  io::write_text_atomic((dir / (a.name + "_summary.json")).string(), summary);
  o.out << summary;
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const Outputs o{out, err};
  CLI::App app{"Elastic-curve tools for cubic Bezier curves"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string input;
  bool as_json = false;
  auto* residual = app.add_subcommand("residual", "lambda residual and quality class of a curve");
  residual->add_option("input", input, "curve JSON file, - for stdin")->required();
  residual->add_flag("--json", as_json, "machine-readable output");
  residual->callback([&] { action = [&] { return cmd_residual(o, input, as_json); }; });

  ProjectArgs pa;
  auto* project = app.add_subcommand("project", "end-data preserving projection toward elastica-like curves");
  project->add_option("input", pa.input, "curve JSON file, - for stdin")->required();
  project->add_option("--method", pa.method, "feedback or geometric")->check(CLI::IsMember({"feedback", "geometric"}));
  project->add_option("--threshold", pa.threshold, "stop once e_lambda <= E");
  project->add_option("--profile", pa.profile, "angle-constraint profile used for the admissibility flag")
      ->check(CLI::IsMember({"strict", "relaxed_quarter", "relaxed_sixth"}));
  project->add_option("--out", pa.out, "projected curve JSON");
  project->add_option("--report", pa.report, "projection report JSON");
  project->add_option("--overlay", pa.overlay, "first-guess elastica segment JSON of the output");
  project->callback([&] { action = [&] { return cmd_project(o, pa); }; });

  std::string approx_out = "-";
  auto* approximate = app.add_subcommand("approximate", "fit an elastica segment");
  approximate->add_option("input", input, "curve JSON file, - for stdin")->required();
  approximate->add_option("--out", approx_out, "segment JSON (full fit result with --json)");
  approximate->add_flag("--json", as_json, "write the full fit result");
  approximate->callback([&] { action = [&] { return cmd_approximate(o, input, approx_out, as_json); }; });

  std::string zone_curve;
  std::string zone_out = "-";
  auto* zone = app.add_subcommand("zone", "zone boundary JSON, or membership of one curve");
  zone->add_option("--curve", zone_curve, "curve JSON to test");
  zone->add_option("--out", zone_out, "boundary JSON destination");
  zone->callback([&] { action = [&] { return cmd_zone(o, zone_curve, zone_out); }; });

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "seeded curve sample");
  sample->add_option("--count,-n", sa.count);
  sample->add_option("--generator", sa.generator)
      ->check(CLI::IsMember({"inner_points_unit_box", "random_quad_unit_disc", "zone_interior"}));
  sample->add_option("--seed", sa.seed);
  sample->add_option("--profile", sa.profile)
      ->check(CLI::IsMember({"none", "strict", "relaxed_quarter", "relaxed_sixth"}));
  sample->add_option("--out", sa.out);
  sample->callback([&] { action = [&] { return cmd_sample(o, sa); }; });

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "batch experiment with CSV and summary JSON");
  experiment->add_option("name", ea.name, "correlation, projection or zone_sweep")
      ->required()
      ->check(CLI::IsMember({"correlation", "projection", "zone_sweep"}));
  experiment->add_option("--n", ea.n, "sample size");
  experiment->add_option("--seed", ea.seed);
  experiment->add_option("--out", ea.out, "output directory");
  experiment->add_option("--generator", ea.generator)
      ->check(CLI::IsMember({"inner_points_unit_box", "random_quad_unit_disc", "zone_interior"}));
  experiment->add_option("--profile", ea.profile)
      ->check(CLI::IsMember({"none", "strict", "relaxed_quarter", "relaxed_sixth"}));
  experiment->add_option("--threshold", ea.threshold, "projection experiment threshold E");
  experiment->add_flag("--serial", ea.serial, "single-threaded reference path");
  experiment->callback([&] { action = [&] { return cmd_experiment(o, ea); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitMalformed;
  }
  try {
    return action();
  } catch (const io::InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const DegenerateError& e) {
    err << "error: degenerate curve: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const CuspError& e) {
    err << "error: degenerate curve: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const AngleConstraintViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitInadmissible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace elb::cli
