#include "elb/geom.hpp"

#include <algorithm>

#include "elb/quadrature.hpp"

namespace elb {

double wrap_two_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double wrap_pi(double a) {
  double r = wrap_two_pi(a);
  if (r > kPi) r -= kTwoPi;
  return r;
}

namespace {
Point2 rotate(Point2 v, double c, double s) { return {c * v.x - s * v.y, s * v.x + c * v.y}; }
}  // namespace

Point2 Similarity::apply(Point2 p) const { return apply_linear(p) + translation; }

Point2 Similarity::apply_linear(Point2 v) const {
  return rotate(v, std::cos(rotation), std::sin(rotation)) * scale;
}

Similarity Similarity::inverse() const {
  Similarity inv;
  inv.scale = 1.0 / scale;
  inv.rotation = -rotation;
  inv.translation = -inv.apply_linear(translation);
  return inv;
}

Similarity Similarity::then(const Similarity& next) const {
  Similarity s;
  s.scale = scale * next.scale;
  s.rotation = rotation + next.rotation;
  s.translation = next.apply(translation);
  return s;
}

Point2 CubicBezier::eval(double t) const {
  const double u = 1.0 - t;
  const double b0 = u * u * u;
  const double b1 = 3.0 * u * u * t;
  const double b2 = 3.0 * u * t * t;
  const double b3 = t * t * t;
  return {b0 * p[0].x + b1 * p[1].x + b2 * p[2].x + b3 * p[3].x,
          b0 * p[0].y + b1 * p[1].y + b2 * p[2].y + b3 * p[3].y};
}

Point2 CubicBezier::d1(double t) const {
  const double u = 1.0 - t;
  const Point2 a = p[1] - p[0];
  const Point2 b = p[2] - p[1];
  const Point2 c = p[3] - p[2];
  return (a * (u * u) + b * (2.0 * u * t) + c * (t * t)) * 3.0;
}

Point2 CubicBezier::d2(double t) const {
  const Point2 a = p[2] - p[1] * 2.0 + p[0];
  const Point2 b = p[3] - p[2] * 2.0 + p[1];
  return (a * (1.0 - t) + b * t) * 6.0;
}

namespace {
double polygon_extent(const CubicBezier& c) {
  double m = 0.0;
  for (int i = 1; i < 4; ++i) m = std::max(m, (c.p[i] - c.p[0]).norm());
  return m;
}
}  // namespace

double CubicBezier::curvature(double t) const {
  const Point2 v = d1(t);
  const double speed = v.norm();
  if (!(speed > 1e-12 * polygon_extent(*this))) {
    throw CuspError("curve speed vanishes at t = " + std::to_string(t));
  }
  return cross(v, d2(t)) / (speed * speed * speed);
}

double CubicBezier::curvature_or_zero(double t) const {
  const Point2 v = d1(t);
  const double speed = v.norm();
  if (!(speed > 1e-12 * polygon_extent(*this))) return 0.0;
  return cross(v, d2(t)) / (speed * speed * speed);
}

Point2 CubicBezier::eval_de_casteljau(double t) const {
  std::array<Point2, 4> q = p;
  for (int level = 3; level > 0; --level) {
    for (int i = 0; i < level; ++i) q[i] = q[i] * (1.0 - t) + q[i + 1] * t;
  }
  return q[0];
}

CubicBezier CubicBezier::transformed(const Similarity& s) const {
  return {s.apply(p[0]), s.apply(p[1]), s.apply(p[2]), s.apply(p[3])};
}

Point2 bezier_eval(const CubicBezier& c, double t) { return c.eval(t); }

double bezier_curvature(const CubicBezier& c, double t) { return c.curvature(t); }

double arc_length(const CubicBezier& c, double t0, double t1) {
  if (t1 <= t0) return 0.0;
  const double scale = std::max(polygon_extent(c), 1e-300);
  // Tolerance is relative to the polygon size so that the bound is scale-free.
  return quad::integrate([&c](double t) { return c.d1(t).norm(); }, t0, t1, 1e-12 * scale);
}

StandardForm standard_position(const CubicBezier& c) {
  const Point2 chord = c.p[3] - c.p[0];
  const double len = chord.norm();
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw DegenerateError("curve endpoints coincide");
  }
  Similarity s;
  s.scale = 1.0 / len;
  s.rotation = -chord.angle();
  s.translation = -s.apply_linear(c.p[0]);
  StandardForm out{c.transformed(s), s};
  // Pin the endpoints exactly; rounding in the rotation would otherwise leave ~1e-17 noise.
  out.curve.p[0] = {0.0, 0.0};
  out.curve.p[3] = {1.0, 0.0};
  return out;
}

PolygonGeometry polygon_geometry(const CubicBezier& c) {
  const Point2 e1 = c.p[1] - c.p[0];
  const Point2 em = c.p[2] - c.p[1];
  const Point2 e3 = c.p[3] - c.p[2];
  PolygonGeometry g;
  g.L1 = e1.norm();
  g.L2 = e3.norm();
  if (!(g.L1 > 0.0) || !(g.L2 > 0.0)) {
    throw DegenerateError("outer control polygon edge has zero length");
  }
  g.theta1 = e1.angle();
  g.theta2 = (-e3).angle();
  g.beta1 = wrap_two_pi(kPi - g.theta1);
  g.beta2 = wrap_two_pi(g.theta2);

  double tau1 = 0.0;
  double tau2 = 0.0;
  if (em.norm() > 1e-14 * std::max(g.L1, g.L2)) {
    tau1 = std::atan2(cross(e1, em), dot(e1, em));
    tau2 = std::atan2(cross(em, e3), dot(em, e3));
  } else {
    // Coincident inner points: split the total turn evenly.
    const double total = std::atan2(cross(e1, e3), dot(e1, e3));
    tau1 = tau2 = 0.5 * total;
  }
  g.phi1 = wrap_two_pi(kPi - tau1);
  g.phi2 = wrap_two_pi(kPi - tau2);
  g.inflectional = (g.phi2 <= kPi && kPi <= g.phi1) || (g.phi1 <= kPi && kPi <= g.phi2);
  return g;
}

CubicBezier set_edge_lengths(const CubicBezier& c, Point2 dir1, Point2 dir2, double L1, double L2) {
  CubicBezier out = c;
  out.p[1] = c.p[0] + dir1 * L1;
  out.p[2] = c.p[3] + dir2 * L2;
  return out;
}

CubicBezier set_edge_lengths(const CubicBezier& c, double L1, double L2) {
  const Point2 e1 = c.p[1] - c.p[0];
  const Point2 e2 = c.p[2] - c.p[3];
  const double n1 = e1.norm();
  const double n2 = e2.norm();
  if (!(n1 > 0.0) || !(n2 > 0.0)) {
    throw DegenerateError("end-tangent direction undefined (zero-length outer edge)");
  }
  if (n1 == L1 && n2 == L2) return c;
  return set_edge_lengths(c, e1 / n1, e2 / n2, L1, L2);
}

namespace {

int orient(Point2 a, Point2 b, Point2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Point2 a0, Point2 a1, Point2 b0, Point2 b1) {
  const int o1 = orient(a0, a1, b0);
  const int o2 = orient(a0, a1, b1);
  const int o3 = orient(b0, b1, a0);
  const int o4 = orient(b0, b1, a1);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a0, a1, b0)) return true;
  if (o2 == 0 && on_segment(a0, a1, b1)) return true;
  if (o3 == 0 && on_segment(b0, b1, a0)) return true;
  if (o4 == 0 && on_segment(b0, b1, a1)) return true;
  return false;
}

bool outer_edges_intersect(const CubicBezier& c) {
  return segments_intersect(c.p[0], c.p[1], c.p[2], c.p[3]);
}

CubicBezier remove_self_intersection(const CubicBezier& c) {
  if (!outer_edges_intersect(c)) return c;
  const Point2 d1 = c.p[1] - c.p[0];
  const Point2 d2 = c.p[2] - c.p[3];
  const double L1 = d1.norm();
  const double L2 = d2.norm();
  if (!(L1 > 0.0) || !(L2 > 0.0)) return c;
  const double denom = cross(d1, d2);
  double q1 = 0.0;  // distance from p0 to the crossing along edge 1
  double q2 = 0.0;  // distance from p3 to the crossing along edge 3
  if (std::abs(denom) > 1e-15 * L1 * L2) {
    const Point2 w = c.p[3] - c.p[0];
    const double s = cross(w, d2) / denom;  // p0 + s d1 == p3 + u d2
    const double u = cross(w, d1) / denom;
    q1 = s * L1;
    q2 = u * L2;
  } else {
    // Collinear overlap: use the middle of the shared interval.
    const Point2 axis = (c.p[3] - c.p[0]) / (c.p[3] - c.p[0]).norm();
    const double a_end = dot(c.p[1] - c.p[0], axis);
    const double b_end = dot(c.p[2] - c.p[0], axis);
    const double mid = 0.5 * (std::max(0.0, b_end) + std::min(a_end, dot(c.p[3] - c.p[0], axis)));
    q1 = std::abs(mid);
    q2 = std::abs(dot(c.p[3] - c.p[0], axis) - mid);
  }
  q1 = std::clamp(q1, 0.0, L1);
  q2 = std::clamp(q2, 0.0, L2);
  CubicBezier out = set_edge_lengths(c, d1 / L1, d2 / L2, 0.9 * q1, 0.9 * q2);
  return out;
}

}  // namespace elb
