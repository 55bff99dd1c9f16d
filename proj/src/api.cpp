#include "elb/api.hpp"

#include "elb/elastica_fit.hpp"
#include "elb/feedback_projection.hpp"
#include "elb/zone.hpp"

namespace elb::api {
namespace {

constexpr AngleProfile kProfiles[] = {AngleProfile::Strict, AngleProfile::RelaxedQuarter, AngleProfile::RelaxedSixth};

json profile_flags(const PolygonGeometry& g) {
  json j = json::object();
  for (AngleProfile p : kProfiles) j[std::string(to_string(p))] = angle_constraints(g, p);
  return j;
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "feedback") return Method::Feedback;
  if (name == "geometric") return Method::Geometric;
  throw io::InputError("unknown method: " + name);
}

json residual(const CubicBezier& curve) {
  const LambdaFit fit = lambda_fit(curve);
  const PolygonGeometry g = polygon_geometry(standard_position(curve).curve);
  json j = io::to_json(fit);
  j["geometry"] = io::to_json(g);
  j["admissible"] = profile_flags(g);
  j["in_zone"] = angle_constraints(g, AngleProfile::Strict) && zone_contains(g);
  return j;
}

ProjectRequest project_request_from_json(const json& j) {
  if (!j.is_object() || !j.contains("curve")) throw io::InputError("request: missing \"curve\"");
  ProjectRequest r;
  r.curve = io::curve_from_json(j.at("curve"));
  try {
    if (j.contains("method")) r.method = parse_method(j.at("method").get<std::string>());
    if (j.contains("profile")) r.profile = parse_angle_profile(j.at("profile").get<std::string>());
    if (j.contains("threshold")) {
      if (!j.at("threshold").is_number()) throw io::InputError("threshold: expected a number");
      r.threshold = j.at("threshold").get<double>();
    }
  } catch (const json::type_error& e) {
    throw io::InputError(std::string("request: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw io::InputError(e.what());
  }
  if (!(r.threshold >= 0.0 && r.threshold < 1.0)) throw io::InputError("threshold must lie in [0, 1)");
  return r;
}

json project(const ProjectRequest& req) {
  const PolygonGeometry g = polygon_geometry(standard_position(req.curve).curve);
  json j;
  CubicBezier output;
  if (req.method == Method::Feedback) {
    FeedbackConfig cfg;
    cfg.threshold_E = req.threshold;
    const ProjectionReport rep = feedback_project(req.curve, cfg);
    output = rep.output;
    j["method"] = "feedback";
    j["e_lambda"] = rep.e_lambda;
    j["report"] = io::to_json(rep);
  } else {
    const GeometricProjection gp = geometric_project_report(req.curve);
    output = gp.curve;
    j["method"] = "geometric";
    j["e_lambda"] = e_lambda(output);
    j["report"] = {{"output", io::to_json(output)},
                   {"e_lambda", j["e_lambda"]},
                   {"input_e_lambda", e_lambda(req.curve)},
                   {"reached_zone", gp.reached_zone},
                   {"started_inflectional", gp.started_inflectional},
                   {"became_noninflectional", gp.became_noninflectional},
                   {"L1", gp.L1},
                   {"L2", gp.L2}};
  }
  j["threshold"] = req.threshold;
  j["profile"] = std::string(to_string(req.profile));
  j["admissible"] = angle_constraints(g, req.profile);
  j["output"] = io::to_json(output);
  const ElasticaSegment guess = first_guess(output);
  j["first_guess"] = io::to_json(guess);
  const int n = std::max(io::polyline_density(req.curve), io::polyline_density(output));
  j["input_polyline"] = io::to_json(io::polyline(req.curve, n));
  j["output_polyline"] = io::to_json(io::polyline(output, n));
  j["first_guess_polyline"] = io::to_json(io::polyline(guess, n));
  return j;
}

json approximate(const CubicBezier& curve) {
  const FitResult fit = fit_elastica(curve);
  const int n = io::polyline_density(curve);
  json j = io::to_json(fit);
  j["e_lambda"] = e_lambda(curve);
  j["curve_polyline"] = io::to_json(io::polyline(curve, n));
  j["elastica_polyline"] = io::to_json(io::polyline(fit.segment, n));
  return j;
}

json zone_boundary() {
  const ProjectionZone& z = ProjectionZone::get();
  json profiles = json::object();
  for (AngleProfile p : kProfiles) {
    const AngleLimits lim = angle_limits(p);
    profiles[std::string(to_string(p))] = {{"beta_min", lim.beta_min}, {"asym_max", lim.asym_max}};
  }
  const std::vector<Point2> boundary(z.boundary().begin(), z.boundary().end());
  const std::vector<Point2> anchors(z.anchors().begin(), z.anchors().end());
  return {{"boundary", io::to_json(boundary)},
          {"anchors", io::to_json(anchors)},
          {"constants",
           {{"angle_profiles", profiles},
            {"inflectional_ratio_cap", kInflectionalRatioCap},
            {"L_min_inflectional", FeedbackConfig{}.L_min_inflectional},
            {"terminal_length_min", kTerminalLengthMin},
            {"class_thresholds", {{"best", kBestMax}, {"good", kGoodMax}, {"borderline", kBorderlineMax}}}}}};
}

}  // namespace elb::api
