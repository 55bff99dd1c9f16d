#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace elb {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Raised when a construction needs two distinct points (or a nonzero edge) and gets none.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the curve speed vanishes where curvature is requested.
class CuspError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  constexpr Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  constexpr Point2 operator-() const { return {-x, -y}; }
  constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Point2 operator/(double s) const { return {x / s, y / s}; }
  constexpr bool operator==(const Point2&) const = default;

  double norm() const { return std::hypot(x, y); }
  double angle() const { return std::atan2(y, x); }
};

constexpr Point2 operator*(double s, Point2 p) { return p * s; }
constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

/// Wraps an angle into [0, 2*pi).
double wrap_two_pi(double a);
/// Wraps an angle into (-pi, pi].
double wrap_pi(double a);

/// Orientation-preserving similarity: p -> scale * R(rotation) * p + translation.
struct Similarity {
  double scale = 1.0;
  double rotation = 0.0;
  Point2 translation{};

  Point2 apply(Point2 p) const;
  /// Applies only the linear part (for direction vectors).
  Point2 apply_linear(Point2 v) const;
  Similarity inverse() const;
  /// (a.then(b))(p) == b(a(p))
  Similarity then(const Similarity& next) const;

  static Similarity identity() { return {}; }
};

struct CubicBezier {
  std::array<Point2, 4> p{};

  CubicBezier() = default;
  CubicBezier(Point2 p0, Point2 p1, Point2 p2, Point2 p3) : p{p0, p1, p2, p3} {}

  Point2 eval(double t) const;
  Point2 d1(double t) const;
  Point2 d2(double t) const;
  /// Signed curvature, counterclockwise positive. Throws CuspError if the speed vanishes.
  double curvature(double t) const;
  /// Same as curvature() but returns 0 instead of throwing at a cusp.
  double curvature_or_zero(double t) const;
  /// De Casteljau evaluation; kept as an independent route for tests.
  Point2 eval_de_casteljau(double t) const;

  CubicBezier transformed(const Similarity& s) const;
  bool operator==(const CubicBezier&) const = default;
};

Point2 bezier_eval(const CubicBezier& c, double t);
double bezier_curvature(const CubicBezier& c, double t);

/// Arc length of c between parameters t0 <= t1.
double arc_length(const CubicBezier& c, double t0 = 0.0, double t1 = 1.0);

struct StandardForm {
  CubicBezier curve;   // p0 = (0,0), p3 = (1,0)
  Similarity to_standard;
};

StandardForm standard_position(const CubicBezier& c);

/// Control-polygon descriptors for a curve in standard position.
///
/// theta1 is the direction of p1 - p0 and theta2 the direction of p2 - p3, both
/// measured from the positive x-axis in (-pi, pi]. beta1 = pi - theta1 (clockwise from
/// the negative x-axis) and beta2 = theta2 (anticlockwise from the positive x-axis),
/// both wrapped to [0, 2pi). phi_i = pi - tau_i where tau_i is the signed turn of the
/// polygon at the inner vertex i; the straight polygon gives phi1 = phi2 = pi.
struct PolygonGeometry {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double phi1 = kPi;
  double phi2 = kPi;
  double theta1 = 0.0;
  double theta2 = kPi;
  double L1 = 0.0;
  double L2 = 0.0;
  bool inflectional = true;
};

PolygonGeometry polygon_geometry(const CubicBezier& standard);

/// Moves p1 along its end-tangent ray to distance L1 from p0 and p2 along its ray to
/// distance L2 from p3. Directions are taken from the current inner points.
CubicBezier set_edge_lengths(const CubicBezier& c, double L1, double L2);

/// Same, with explicit unit directions (so repeated calls never drift).
CubicBezier set_edge_lengths(const CubicBezier& c, Point2 dir1, Point2 dir2, double L1, double L2);

/// True when the closed segments a0-a1 and b0-b1 share a point.
bool segments_intersect(Point2 a0, Point2 a1, Point2 b0, Point2 b1);

/// True when the outer polygon edges p0p1 and p2p3 touch or cross.
bool outer_edges_intersect(const CubicBezier& c);

/// Shortens crossing outer edges to 0.9 of their distance to the crossing point.
CubicBezier remove_self_intersection(const CubicBezier& c);

}  // namespace elb
