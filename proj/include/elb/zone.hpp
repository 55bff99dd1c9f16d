#pragma once

#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "elb/geom.hpp"

namespace elb {

class AngleConstraintViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Angle-constraint profiles: beta in (beta_min, 2pi - beta_min), |beta1 - beta2| < asym_max.
enum class AngleProfile { Strict, RelaxedQuarter, RelaxedSixth };

struct AngleLimits {
  double beta_min;
  double asym_max;
};

AngleLimits angle_limits(AngleProfile profile);
std::string_view to_string(AngleProfile profile);
AngleProfile parse_angle_profile(std::string_view name);

bool angle_constraints(const PolygonGeometry& geom, AngleProfile profile);

struct EdgeLengthBounds {
  double L_min = 0.4;
  double L_max = 1.2;
  double delta = 0.0;
};

/// delta = sign(theta2) (theta1 - theta2) / pi with sign(0) = 0;
/// L_min = max(0.4 (1 + 6 delta), 0.27), L_max = max(1.2 (1 + 5 delta), 0.58).
EdgeLengthBounds edge_length_bounds(double theta1, double theta2);

inline constexpr double kInflectionalRatioCap = 1.3;
inline constexpr int kBoundaryVertices = 2048;

/// Region of good curves in the (phi1, phi2) plane, bounded by a closed periodic cubic
/// spline through the anchor points and their images under the two diagonal reflections.
/// Immutable after construction.
class ProjectionZone {
 public:
  ProjectionZone();

  /// Shared instance; construction is thread-safe.
  static const ProjectionZone& get();

  std::span<const Point2> anchors() const { return anchors_; }
  /// Closed polyline (first vertex not repeated); anchors are vertices.
  std::span<const Point2> boundary() const { return boundary_; }

  /// Strict interior test of (phi1, phi2) against the boundary polyline.
  bool inside_boundary(double phi1, double phi2) const;

  /// Evaluates the boundary spline at parameter u in [0, anchors().size()).
  Point2 spline_at(double u) const;

 private:
  std::vector<Point2> anchors_;
  std::vector<Point2> second_derivs_;
  std::vector<Point2> boundary_;
  // Edges bucketed by phi2 for the crossing test.
  double y_lo_ = 0.0;
  double y_hi_ = 0.0;
  std::vector<std::vector<int>> bins_;
};

/// Rebuilds the standard-position polygon encoded by a PolygonGeometry.
CubicBezier polygon_from_geometry(const PolygonGeometry& geom);

/// Full membership test: boundary spline, edge-length bounds, inflectional ratio cap and
/// no crossing outer edges.
bool zone_contains(const PolygonGeometry& geom);
bool zone_contains_standard(const CubicBezier& standard);

struct GeometricProjection {
  CubicBezier curve;
  bool reached_zone = false;
  bool started_inflectional = false;
  bool became_noninflectional = false;
  double L1 = 0.0;  // final outer edge lengths in standard position
  double L2 = 0.0;
};

/// End-tangent preserving projection into the zone. Throws AngleConstraintViolation when
/// the input fails the strict angle constraints, DegenerateError for coincident endpoints.
GeometricProjection geometric_project_report(const CubicBezier& curve);
CubicBezier geometric_project(const CubicBezier& curve);

/// Rebuilds a world-space curve that keeps input's endpoints and end-tangent directions
/// exactly, with outer edge lengths given in standard-position units.
CubicBezier with_standard_edge_lengths(const CubicBezier& input, double L1, double L2);

}  // namespace elb
