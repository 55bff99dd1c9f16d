#include "elb/zone.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace elb {

AngleLimits angle_limits(AngleProfile profile) {
  switch (profile) {
    case AngleProfile::Strict: return {kPi / 3.0, 0.4 * kPi};
    case AngleProfile::RelaxedQuarter: return {kPi / 4.0, 0.6 * kPi};
    case AngleProfile::RelaxedSixth: return {kPi / 6.0, 0.75 * kPi};
  }
  return {kPi / 3.0, 0.4 * kPi};
}

std::string_view to_string(AngleProfile profile) {
  switch (profile) {
    case AngleProfile::Strict: return "strict";
    case AngleProfile::RelaxedQuarter: return "relaxed_quarter";
    case AngleProfile::RelaxedSixth: return "relaxed_sixth";
  }
  return "strict";
}

AngleProfile parse_angle_profile(std::string_view name) {
  if (name == "strict") return AngleProfile::Strict;
  if (name == "relaxed_quarter") return AngleProfile::RelaxedQuarter;
  if (name == "relaxed_sixth") return AngleProfile::RelaxedSixth;
  throw std::invalid_argument("unknown angle profile: " + std::string(name));
}

bool angle_constraints(const PolygonGeometry& g, AngleProfile profile) {
  const AngleLimits lim = angle_limits(profile);
  const double hi = kTwoPi - lim.beta_min;
  const bool absolute = g.beta1 > lim.beta_min && g.beta1 < hi && g.beta2 > lim.beta_min &&
                        g.beta2 < hi;
  return absolute && std::abs(g.beta1 - g.beta2) < lim.asym_max;
}

EdgeLengthBounds edge_length_bounds(double theta1, double theta2) {
  const double sign = (theta2 > 0.0) - (theta2 < 0.0);
  EdgeLengthBounds b;
  b.delta = sign * (theta1 - theta2) / kPi;
  b.L_min = std::max(0.4 * (1.0 + 6.0 * b.delta), 0.27);
  b.L_max = std::max(1.2 * (1.0 + 5.0 * b.delta), 0.58);
  return b;
}

namespace {

std::vector<Point2> anchor_loop() {
  const std::array<Point2, 5> given{{{1.05, 1.05}, {1.9, 1.3}, {kPi, 1.35}, {4.3, 1.3},
                                     {5.2, kTwoPi - 5.2}}};
  std::vector<Point2> pts;
  auto add = [&pts](Point2 p) {
    for (const Point2& q : pts)
      if (std::abs(q.x - p.x) < 1e-12 && std::abs(q.y - p.y) < 1e-12) return;
    pts.push_back(p);
  };
  for (const Point2& p : given) {
    add(p);
    add({p.y, p.x});
    add({kTwoPi - p.y, kTwoPi - p.x});
    add({kTwoPi - p.x, kTwoPi - p.y});
  }
  // Order counterclockwise around (pi, pi), starting from the lower-left corner.
  const Point2 c{kPi, kPi};
  auto key = [&c](Point2 p) {
    double a = std::atan2(p.y - c.y, p.x - c.x) + 0.75 * kPi;
    return wrap_two_pi(a);
  };
  std::sort(pts.begin(), pts.end(), [&](Point2 a, Point2 b) { return key(a) < key(b); });
  return pts;
}

/// Second derivatives of the uniform periodic cubic spline: M_{i-1} + 4 M_i + M_{i+1} =
/// 6 (P_{i+1} - 2 P_i + P_{i-1}). Dense elimination; n is small.
std::vector<Point2> periodic_second_derivatives(const std::vector<Point2>& P) {
  const int n = static_cast<int>(P.size());
  std::vector<std::vector<double>> A(n, std::vector<double>(n + 2, 0.0));
  for (int i = 0; i < n; ++i) {
    A[i][(i + n - 1) % n] += 1.0;
    A[i][i] += 4.0;
    A[i][(i + 1) % n] += 1.0;
    const Point2 rhs = (P[(i + 1) % n] - P[i] * 2.0 + P[(i + n - 1) % n]) * 6.0;
    A[i][n] = rhs.x;
    A[i][n + 1] = rhs.y;
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    std::swap(A[col], A[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = A[r][col] / A[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < n + 2; ++c) A[r][c] -= f * A[col][c];
    }
  }
  std::vector<Point2> M(n);
  for (int i = 0; i < n; ++i) M[i] = {A[i][n] / A[i][i], A[i][n + 1] / A[i][i]};
  return M;
}

constexpr int kBins = 64;

}  // namespace

ProjectionZone::ProjectionZone() : anchors_(anchor_loop()) {
  second_derivs_ = periodic_second_derivatives(anchors_);
  const int n = static_cast<int>(anchors_.size());
  const int per = kBoundaryVertices / n;
  boundary_.reserve(kBoundaryVertices);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < per; ++j) boundary_.push_back(spline_at(i + static_cast<double>(j) / per));
  }
  y_lo_ = boundary_[0].y;
  y_hi_ = boundary_[0].y;
  for (const Point2& p : boundary_) {
    y_lo_ = std::min(y_lo_, p.y);
    y_hi_ = std::max(y_hi_, p.y);
  }
  bins_.assign(kBins, {});
  const int m = static_cast<int>(boundary_.size());
  const double h = (y_hi_ - y_lo_) / kBins;
  for (int e = 0; e < m; ++e) {
    const Point2 a = boundary_[e];
    const Point2 b = boundary_[(e + 1) % m];
    const int lo = std::clamp(static_cast<int>((std::min(a.y, b.y) - y_lo_) / h), 0, kBins - 1);
    const int hi = std::clamp(static_cast<int>((std::max(a.y, b.y) - y_lo_) / h), 0, kBins - 1);
    for (int k = lo; k <= hi; ++k) bins_[k].push_back(e);
  }
}

const ProjectionZone& ProjectionZone::get() {
  static const ProjectionZone zone;
  return zone;
}

Point2 ProjectionZone::spline_at(double u) const {
  const int n = static_cast<int>(anchors_.size());
  double fl = std::floor(u);
  int i = static_cast<int>(fl) % n;
  if (i < 0) i += n;
  const double t = u - fl;
  const int j = (i + 1) % n;
  const double s = 1.0 - t;
  return anchors_[i] * s + anchors_[j] * t + second_derivs_[i] * ((s * s * s - s) / 6.0) +
         second_derivs_[j] * ((t * t * t - t) / 6.0);
}

bool ProjectionZone::inside_boundary(double x, double y) const {
  if (!(y > y_lo_ && y < y_hi_)) return false;
  const double h = (y_hi_ - y_lo_) / kBins;
  const int bin = std::clamp(static_cast<int>((y - y_lo_) / h), 0, kBins - 1);
  const int m = static_cast<int>(boundary_.size());
  bool inside = false;
  for (int e : bins_[bin]) {
    const Point2 a = boundary_[e];
    const Point2 b = boundary_[(e + 1) % m];
    // Points on the boundary are excluded (strict interior).
    const Point2 ab = b - a;
    const Point2 ap = Point2{x, y} - a;
    const double len2 = dot(ab, ab);
    if (len2 > 0.0) {
      const double tt = std::clamp(dot(ap, ab) / len2, 0.0, 1.0);
      if ((ap - ab * tt).norm() < 1e-12) return false;
    }
    if ((a.y > y) != (b.y > y)) {
      const double xc = a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (x < xc) inside = !inside;
    }
  }
  return inside;
}

CubicBezier polygon_from_geometry(const PolygonGeometry& g) {
  return {{0.0, 0.0},
          {g.L1 * std::cos(g.theta1), g.L1 * std::sin(g.theta1)},
          {1.0 + g.L2 * std::cos(g.theta2), g.L2 * std::sin(g.theta2)},
          {1.0, 0.0}};
}

namespace {

// Relative slack on the closed length bounds: projections land exactly on a bound, and
// lengths recomputed from coordinates differ from it by a few ulps.
constexpr double kLengthSlack = 1e-12;

bool zone_contains_impl(const PolygonGeometry& g, const CubicBezier& standard) {
  const EdgeLengthBounds b = edge_length_bounds(g.theta1, g.theta2);
  const double lo = b.L_min * (1.0 - kLengthSlack);
  const double hi = b.L_max * (1.0 + kLengthSlack);
  if (!(g.L1 >= lo && g.L1 <= hi && g.L2 >= lo && g.L2 <= hi)) return false;
  if (g.inflectional && std::max(g.L1 / g.L2, g.L2 / g.L1) > kInflectionalRatioCap * (1.0 + kLengthSlack)) return false;
  if (!ProjectionZone::get().inside_boundary(g.phi1, g.phi2)) return false;
  return !outer_edges_intersect(standard);
}

}  // namespace

bool zone_contains(const PolygonGeometry& g) { return zone_contains_impl(g, polygon_from_geometry(g)); }

bool zone_contains_standard(const CubicBezier& standard) {
  return zone_contains_impl(polygon_geometry(standard), standard);
}

CubicBezier with_standard_edge_lengths(const CubicBezier& input, double L1, double L2) {
  const double chord = (input.p[3] - input.p[0]).norm();
  const Point2 d1 = input.p[1] - input.p[0];
  const Point2 d2 = input.p[2] - input.p[3];
  CubicBezier out = input;
  out.p[1] = input.p[0] + d1 * (L1 * chord / d1.norm());
  out.p[2] = input.p[3] + d2 * (L2 * chord / d2.norm());
  return out;
}

namespace {

constexpr int kSweepSteps = 200;
constexpr int kBisections = 48;

/// Outer-edge lengths and the fixed unit directions of a standard-position polygon.
struct LegState {
  Point2 dir1;
  Point2 dir2;
  CubicBezier base;
  const CubicBezier* world = nullptr;

  CubicBezier at(double L1, double L2) const { return set_edge_lengths(base, dir1, dir2, L1, L2); }

  // Membership of the world-space result as a caller would recheck it, so a landing found
  // by bisection survives the round trip through world coordinates.
  bool inside(double L1, double L2) const {
    if (!zone_contains_standard(at(L1, L2))) return false;
    return !world || zone_contains_standard(standard_position(with_standard_edge_lengths(*world, L1, L2)).curve);
  }
};

struct SweepResult {
  double L1;
  double L2;
  bool reached;
  bool left_inflectional;  // sweep stopped because the curve stopped being inflectional
};

/// Linear sweep from (a1, a2) to (b1, b2). Stops at the first t where the zone is reached
/// (bisected to the boundary) or, when stop_on_noninflectional is set, where the polygon
/// stops being inflectional.
SweepResult sweep(const LegState& legs, double a1, double a2, double b1, double b2,
                  bool stop_on_noninflectional) {
  auto at = [&](double t) { return std::pair{(1 - t) * a1 + t * b1, (1 - t) * a2 + t * b2}; };
  auto inside = [&](double t) {
    auto [l1, l2] = at(t);
    return legs.inside(l1, l2);
  };
  auto infl = [&](double t) {
    auto [l1, l2] = at(t);
    return polygon_geometry(legs.at(l1, l2)).inflectional;
  };
  double prev = 0.0;
  for (int step = 1; step <= kSweepSteps; ++step) {
    const double t = static_cast<double>(step) / kSweepSteps;
    const bool in = inside(t);
    const bool lost = stop_on_noninflectional && !infl(t);
    if (in || lost) {
      double lo = prev;
      double hi = t;
      if (in) {
        for (int i = 0; i < kBisections; ++i) {
          const double mid = 0.5 * (lo + hi);
          if (inside(mid)) hi = mid; else lo = mid;
        }
        auto [l1, l2] = at(hi);
        return {l1, l2, true, false};
      }
      for (int i = 0; i < kBisections; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (!infl(mid)) hi = mid; else lo = mid;
      }
      auto [l1, l2] = at(hi);
      return {l1, l2, false, true};
    }
    prev = t;
  }
  return {b1, b2, false, false};
}

/// Non-inflectional deformation: shorten the leg at the smaller interior angle towards
/// L_min and lengthen the other towards L_max; this moves (phi1, phi2) towards phi1 = phi2.
SweepResult sweep_noninflectional(const LegState& legs, double L1, double L2,
                                  const EdgeLengthBounds& b) {
  const PolygonGeometry g = polygon_geometry(legs.at(L1, L2));
  const bool upper = g.phi1 + g.phi2 > kTwoPi;
  const double inner1 = upper ? kTwoPi - g.phi1 : g.phi1;
  const double inner2 = upper ? kTwoPi - g.phi2 : g.phi2;
  if (inner1 <= inner2) return sweep(legs, L1, L2, b.L_min, b.L_max, false);
  return sweep(legs, L1, L2, b.L_max, b.L_min, false);
}

}  // namespace

GeometricProjection geometric_project_report(const CubicBezier& curve) {
  const StandardForm sf = standard_position(curve);
  const PolygonGeometry g0 = polygon_geometry(sf.curve);
  if (!angle_constraints(g0, AngleProfile::Strict)) {
    throw AngleConstraintViolation("input violates the strict angle constraints");
  }
  GeometricProjection out;
  out.curve = curve;
  out.L1 = g0.L1;
  out.L2 = g0.L2;
  if (zone_contains_standard(sf.curve)) {
    out.reached_zone = true;
    out.started_inflectional = g0.inflectional;
    return out;
  }

  LegState legs{sf.curve.p[1] / g0.L1, (sf.curve.p[2] - sf.curve.p[3]) / g0.L2, sf.curve, &curve};
  const CubicBezier untangled = remove_self_intersection(sf.curve);
  double L1 = (untangled.p[1] - untangled.p[0]).norm();
  double L2 = (untangled.p[2] - untangled.p[3]).norm();
  const EdgeLengthBounds b = edge_length_bounds(g0.theta1, g0.theta2);
  L1 = std::clamp(L1, b.L_min, b.L_max);
  L2 = std::clamp(L2, b.L_min, b.L_max);

  const PolygonGeometry g1 = polygon_geometry(legs.at(L1, L2));
  out.started_inflectional = g1.inflectional;
  SweepResult r{L1, L2, legs.inside(L1, L2), false};
  if (!r.reached && g1.inflectional) {
    r = sweep(legs, L1, L2, b.L_min, b.L_min, true);
    if (r.left_inflectional) {
      out.became_noninflectional = true;
      r = sweep_noninflectional(legs, r.L1, r.L2, b);
    }
  } else if (!r.reached) {
    r = sweep_noninflectional(legs, L1, L2, b);
  }
  out.reached_zone = r.reached;
  out.L1 = r.L1;
  out.L2 = r.L2;
  out.curve = with_standard_edge_lengths(curve, r.L1, r.L2);
  return out;
}

CubicBezier geometric_project(const CubicBezier& curve) { return geometric_project_report(curve).curve; }

}  // namespace elb
