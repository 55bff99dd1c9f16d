#pragma once

#include <string>

#include "elb/io.hpp"

namespace elb::api {

using io::json;

/// JSON views shared by the command-line tool and the HTTP service. All functions are
/// pure; errors surface as io::InputError, DegenerateError, CuspError or
/// AngleConstraintViolation.

/// lambda fit, class, polygon descriptors, admissibility per profile and zone membership.
json residual(const CubicBezier& curve);

enum class Method { Feedback, Geometric };

struct ProjectRequest {
  CubicBezier curve;
  Method method = Method::Feedback;
  double threshold = 0.0;
  AngleProfile profile = AngleProfile::Strict;
};

/// {"curve": ..., "method": "feedback" | "geometric", "threshold": E, "profile": name};
/// only "curve" is required.
ProjectRequest project_request_from_json(const json& j);

/// Projection report, output curve, first guess of the output and polylines of input,
/// output and first guess.
json project(const ProjectRequest& req);

/// Full elastica fit with polylines of the curve and the fitted segment.
json approximate(const CubicBezier& curve);

/// Zone boundary polyline, anchors and the constants the projection uses.
json zone_boundary();

Method parse_method(const std::string& name);

}  // namespace elb::api
