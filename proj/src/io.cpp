#include "elb/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace elb::io {
namespace {

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(std::string(what) + ": not finite");
  return v;
}

double field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return number(j.at(key), key);
}

Point2 point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw InputError(std::string(what) + ": expected [x, y]");
  return {number(j[0], what), number(j[1], what)};
}

json pt(Point2 p) { return json::array({p.x, p.y}); }

}  // namespace

json to_json(const CubicBezier& c) {
  json pts = json::array();
  for (const Point2& p : c.p) pts.push_back(pt(p));
  return {{"control_points", pts}};
}

CubicBezier curve_from_json(const json& j) {
  if (!j.is_object() || !j.contains("control_points")) throw InputError("curve: missing \"control_points\"");
  const json& a = j.at("control_points");
  if (!a.is_array() || a.size() != 4) throw InputError("curve: \"control_points\" must hold 4 points");
  CubicBezier c;
  for (int i = 0; i < 4; ++i) c.p[i] = point(a[i], "control point");
  if (c.p[0] == c.p[3]) throw DegenerateError("curve endpoints coincide");
  return c;
}

json to_json(const ElasticaSegment& s) {
  return {{"k", s.k},
          {"s_start", s.s_start},
          {"s_end", s.s_end},
          {"scale", s.placement.scale},
          {"rotation", s.placement.rotation},
          {"translation", pt(s.placement.translation)},
          {"mirrored", s.mirrored}};
}

ElasticaSegment segment_from_json(const json& j) {
  if (!j.is_object()) throw InputError("segment: expected an object");
  ElasticaSegment s;
  s.k = field(j, "k");
  s.s_start = field(j, "s_start");
  s.s_end = field(j, "s_end");
  s.placement.scale = field(j, "scale");
  s.placement.rotation = field(j, "rotation");
  if (!j.contains("translation")) throw InputError("missing field \"translation\"");
  s.placement.translation = point(j.at("translation"), "translation");
  if (j.contains("mirrored")) {
    if (!j.at("mirrored").is_boolean()) throw InputError("mirrored: expected a boolean");
    s.mirrored = j.at("mirrored").get<bool>();
  }
  if (s.k < 0.0) throw InputError("segment: k must be nonnegative");
  if (!(s.placement.scale > 0.0)) throw InputError("segment: scale must be positive");
  if (!(s.s_end > s.s_start)) throw InputError("segment: s_end must exceed s_start");
  return s;
}

json to_json(const LambdaFit& f) {
  return {{"e_lambda", f.e_lambda},
          {"class", std::string(to_string(classify(f.e_lambda)))},
          {"lambda1", f.lambda1},
          {"lambda2", f.lambda2},
          {"alpha", f.alpha},
          {"energy", f.energy},
          {"straight_line", f.straight_line}};
}

json to_json(const PolygonGeometry& g) {
  return {{"beta1", g.beta1}, {"beta2", g.beta2}, {"phi1", g.phi1},     {"phi2", g.phi2},
          {"theta1", g.theta1}, {"theta2", g.theta2}, {"L1", g.L1}, {"L2", g.L2},
          {"inflectional", g.inflectional}};
}

json to_json(const FitResult& r) {
  return {{"segment", to_json(r.segment)},
          {"first_guess", to_json(r.first_guess)},
          {"l2", r.l2},
          {"h1", r.h1},
          {"first_guess_l2", r.first_guess_l2},
          {"iterations", r.iterations},
          {"evaluations", r.evaluations},
          {"converged", r.converged},
          {"straight_line", r.straight_line}};
}

json to_json(const ProjectionReport& r) {
  json trace = json::array();
  for (const TracePoint& p : r.trace) {
    trace.push_back({{"pass", p.pass},
                     {"t", p.t},
                     {"e_lambda", p.e_lambda},
                     {"L1", p.L1},
                     {"L2", p.L2},
                     {"inflectional_branch", p.inflectional_branch}});
  }
  return {{"output", to_json(r.output)},
          {"e_lambda", r.e_lambda},
          {"input_e_lambda", r.input_e_lambda},
          {"classification", std::string(to_string(r.classification))},
          {"terminated_by", std::string(to_string(r.terminated_by))},
          {"trace", trace},
          {"out_of_warranty", r.out_of_warranty}};
}

json to_json(const FeedbackConfig& c) {
  return {{"threshold_E", c.threshold_E},
          {"L_min_inflectional", c.L_min_inflectional},
          {"t_grid", c.t_grid},
          {"passes", c.passes}};
}

json to_json(const harness::Stats& s) {
  return {{"mean", s.mean}, {"median", s.median}, {"p99", s.p99}, {"max", s.max}};
}

json to_json(const harness::ExperimentSummary& s) {
  json j = {{"experiment", s.experiment},
            {"seed", s.spec.seed},
            {"config",
             {{"count", s.spec.count},
              {"generator", std::string(harness::to_string(s.spec.generator))},
              {"constraint_profile", std::string(harness::to_string(s.spec.constraint_profile))}}},
            {"n", s.n},
            {"failures", s.failures},
            {"acceptance", s.acceptance},
            {"e_lambda", to_json(s.e_lambda)},
            {"runtime_seconds", s.runtime_seconds}};
  if (s.feedback) j["config"]["feedback"] = to_json(*s.feedback);
  if (s.l2) j["l2"] = to_json(*s.l2);
  if (s.h1) j["h1"] = to_json(*s.h1);
  if (s.spearman_e_lambda_l2) j["spearman_e_lambda_l2"] = *s.spearman_e_lambda_l2;
  if (s.end_data_error) j["end_data_error"] = *s.end_data_error;
  return j;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_text(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::string dump(const json& j, int indent) { return j.dump(indent); }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<Point2> polyline(const CubicBezier& c, int n) {
  std::vector<Point2> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(i + 1 == n ? c.p[3] : c.eval(double(i) / (n - 1)));
  out.front() = c.p[0];
  return out;
}

std::vector<Point2> polyline(const ElasticaSegment& s, int n) {
  std::vector<Point2> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(segment_eval(s, double(i) / (n - 1)));
  return out;
}

int polyline_density(const CubicBezier& c) {
  const double chord = (c.p[3] - c.p[0]).norm();
  const double rel = chord > 0.0 ? arc_length(c) / chord : 4.0;
  return std::clamp(static_cast<int>(std::ceil(128.0 * rel)), 128, 512);
}

json to_json(const std::vector<Point2>& pts) {
  json a = json::array();
  for (const Point2& p : pts) a.push_back(pt(p));
  return a;
}

}  // namespace elb::io
