#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "elb/cli.hpp"
#include "elb/elastica_fit.hpp"
#include "elb/harness.hpp"
#include "elb/io.hpp"
#include "elb/residual.hpp"

using namespace elb;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run elb_tool(std::vector<std::string> args) {
  args.insert(args.begin(), "elb");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("elb_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string file(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string curve_text(const CubicBezier& c) { return io::dump(io::to_json(c)); }

const CubicBezier kLine({0, 0}, {1, 1}, {2, 2}, {3, 3});
const CubicBezier kArch({0, 0}, {0.25, 0.4}, {0.75, 0.4}, {1, 0});
const CubicBezier kS({0, 0}, {0.66, 0.45}, {0.34, -0.45}, {1, 0});

}  // namespace

TEST_CASE("residual command") {
  const TempDir dir;
  Run r = elb_tool({"residual", dir.file("line.json", curve_text(kLine))});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "e_lambda=0 class=Best straight_line=true\n");

  const double a = kPi / 3, h = 4.0 / 3.0 * std::tan(a / 4);
  const CubicBezier arc({1, 0}, {1, h}, {std::cos(a) + h * std::sin(a), std::sin(a) - h * std::cos(a)},
                        {std::cos(a), std::sin(a)});
  r = elb_tool({"residual", dir.file("arc.json", curve_text(arc))});
  CHECK(r.code == 0);
  CHECK(r.out.find("class=Best") != std::string::npos);

  const CubicBezier wild({0, 0}, {2, 3}, {-1, 3}, {1, 0});
  r = elb_tool({"residual", dir.file("wild.json", curve_text(wild))});
  CHECK(e_lambda(wild) > 0.5);
  CHECK(r.out.find("class=Reject") != std::string::npos);

  r = elb_tool({"residual", dir.file("arch.json", curve_text(kArch)), "--json"});
  REQUIRE(r.code == 0);
  const io::json j = io::json::parse(r.out);
  const LambdaFit fit = lambda_fit(kArch);
  CHECK(j.at("e_lambda").get<double>() == fit.e_lambda);
  CHECK(j.at("class").get<std::string>() == std::string(to_string(classify(fit.e_lambda))));
  for (const char* key : {"lambda1", "lambda2", "alpha", "straight_line", "geometry", "admissible", "in_zone"})
    CHECK(j.contains(key));
  CHECK(j.at("geometry").contains("phi1"));
  CHECK(j.at("admissible").at("strict").is_boolean());
}

TEST_CASE("error exit codes") {
  const TempDir dir;
  CHECK(elb_tool({"residual", dir.file("bad.json", "{not json")}).code == cli::kExitMalformed);
  CHECK(elb_tool({"residual", dir.file("short.json", R"({"control_points": [[0,0],[1,1]]})")}).code ==
        cli::kExitMalformed);
  CHECK(elb_tool({"residual", dir.file("text.json", R"({"control_points": [[0,0],[1,"a"],[2,2],[3,0]]})")}).code ==
        cli::kExitMalformed);
  CHECK(elb_tool({"residual", dir.path("missing.json")}).code == cli::kExitMalformed);
  const Run deg = elb_tool({"residual", dir.file("deg.json", R"({"control_points": [[1,1],[2,0],[0,2],[1,1]]})")});
  CHECK(deg.code == cli::kExitDegenerate);
  CHECK_FALSE(deg.err.empty());
  CHECK(elb_tool({"frobnicate"}).code == cli::kExitMalformed);
  CHECK(elb_tool({}).code == cli::kExitMalformed);
  CHECK(elb_tool({"--help"}).code == cli::kExitOk);
  const std::string arch = dir.file("arch.json", curve_text(kArch));
  CHECK(elb_tool({"project", arch, "--threshold", "1.5"}).code == cli::kExitMalformed);
  CHECK(elb_tool({"project", arch, "--method", "magic"}).code == cli::kExitMalformed);

  const CubicBezier steep({0, 0}, {-0.3, 0.2}, {1.3, 0.2}, {1, 0});
  const Run inad = elb_tool({"project", dir.file("steep.json", curve_text(steep)), "--method", "geometric"});
  CHECK(inad.code == cli::kExitInadmissible);
  CHECK(inad.err.find("angle") != std::string::npos);
}

TEST_CASE("project command") {
  REQUIRE(angle_constraints(polygon_geometry(standard_position(kS).curve), AngleProfile::Strict));
  const TempDir dir;
  const std::string arch = dir.file("arch.json", curve_text(kArch));
  REQUIRE(zone_contains_standard(standard_position(kArch).curve));
  Run r = elb_tool({"project", arch, "--method", "geometric"});
  REQUIRE(r.code == 0);
  CHECK(io::curve_from_json(io::json::parse(r.out)) == kArch);

  const std::string s = dir.file("s.json", curve_text(kS));
  const std::string out = dir.path("s_out.json");
  const std::string report = dir.path("s_report.json");
  const std::string overlay = dir.path("s_overlay.json");
  r = elb_tool({"project", s, "--threshold", "0", "--out", out, "--report", report, "--overlay", overlay});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(r.err.find("e_lambda=") == 0);
  const io::json rep = io::json::parse(slurp(report));
  const double e = rep.at("e_lambda").get<double>();
  CHECK(e <= 0.35);
  CHECK(rep.contains("terminated_by"));
  CHECK(rep.contains("trace"));
  const ElasticaSegment seg = io::segment_from_json(io::json::parse(slurp(overlay)));
  CHECK(seg.placement.scale > 0.0);

  // Round trip through the residual command.
  r = elb_tool({"residual", out, "--json"});
  REQUIRE(r.code == 0);
  CHECK(std::abs(io::json::parse(r.out).at("e_lambda").get<double>() - e) <= 1e-12);

  const CubicBezier projected = io::curve_from_json(io::json::parse(slurp(out)));
  CHECK(projected.p[0] == kS.p[0]);
  CHECK(projected.p[3] == kS.p[3]);
}

TEST_CASE("approximate, zone and sample commands") {
  const TempDir dir;
  const std::string arch = dir.file("arch.json", curve_text(kArch));
  Run r = elb_tool({"approximate", arch, "--json"});
  REQUIRE(r.code == 0);
  const io::json fit = io::json::parse(r.out);
  CHECK(fit.at("l2").get<double>() < 0.01);
  CHECK(fit.at("l2").get<double>() == fit_elastica(kArch).l2);

  r = elb_tool({"approximate", arch});
  REQUIRE(r.code == 0);
  CHECK(io::segment_from_json(io::json::parse(r.out)).k == fit_elastica(kArch).segment.k);
  CHECK(r.err.find("l2=") == 0);

  const std::string zone = dir.path("zone.json");
  REQUIRE(elb_tool({"zone", "--out", zone}).code == 0);
  const io::json z = io::json::parse(slurp(zone));
  CHECK(z.at("boundary").size() == 2048);
  CHECK(z.at("anchors").size() == 16);

  r = elb_tool({"zone", "--curve", arch});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("in_zone=true strict_admissible=true") == 0);

  r = elb_tool({"sample", "-n", "25", "--generator", "zone_interior", "--seed", "5"});
  REQUIRE(r.code == 0);
  const io::json s = io::json::parse(r.out);
  REQUIRE(s.at("curves").size() == 25);
  const harness::Sample ref = harness::sample_curves({25, harness::Generator::ZoneInterior, 5});
  for (std::size_t i = 0; i < 25; ++i) CHECK(io::curve_from_json(s.at("curves")[i]) == ref.curves[i]);
}

TEST_CASE("experiment command") {
  const TempDir dir;
  const std::string out = dir.path("runs");
  Run r = elb_tool({"experiment", "zone_sweep", "--n", "300", "--seed", "3", "--out", out});
  REQUIRE(r.code == 0);
  const std::string csv = slurp(out + "/zone_sweep.csv");
  CHECK(csv.rfind("curve_id,e_lambda,l2,h1,classification\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 301);
  const io::json summary = io::json::parse(slurp(out + "/zone_sweep_summary.json"));
  CHECK(summary.at("n").get<int>() == 300);
  CHECK(summary.at("seed").get<int>() == 3);
  CHECK(io::json::parse(r.out) == summary);

  r = elb_tool({"experiment", "projection", "--n", "20", "--out", out, "--serial"});
  REQUIRE(r.code == 0);
  const io::json p = io::json::parse(slurp(out + "/projection_summary.json"));
  CHECK(p.contains("config"));
  CHECK(p.at("e_lambda").at("max").get<double>() <= 0.35);

  r = elb_tool({"experiment", "correlation", "--n", "10", "--out", out});
  REQUIRE(r.code == 0);
  CHECK(io::json::parse(slurp(out + "/correlation_summary.json")).contains("spearman_e_lambda_l2"));
  CHECK(elb_tool({"experiment", "other", "--out", out}).code == cli::kExitMalformed);
}
