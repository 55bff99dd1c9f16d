#include <doctest.h>

#include <random>

#include "elb/zone.hpp"
#include "support.hpp"

using namespace elb;

namespace {

// Standard-position polygon from outer edge directions and lengths; theta2 is the
// direction of p2 - p3.
CubicBezier polygon(double theta1, double theta2, double L1, double L2) {
  return {{0, 0}, {L1 * std::cos(theta1), L1 * std::sin(theta1)},
          {1 + L2 * std::cos(theta2), L2 * std::sin(theta2)}, {1, 0}};
}

PolygonGeometry betas(double b1, double b2) {
  PolygonGeometry g;
  g.beta1 = b1;
  g.beta2 = b2;
  return g;
}

double distance_to_polyline(Point2 q, std::span<const Point2> poly) {
  double best = 1e300;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 a = poly[i], b = poly[(i + 1) % poly.size()];
    const Point2 ab = b - a;
    const double t = std::clamp(dot(q - a, ab) / dot(ab, ab), 0.0, 1.0);
    best = std::min(best, (q - (a + ab * t)).norm());
  }
  return best;
}

double unit_angle(Point2 v) { return v.angle(); }

}  // namespace

TEST_CASE("angle constraints") {
  CHECK(angle_constraints(polygon_geometry(polygon(kPi / 2, kPi / 2, 0.5, 0.5)), AngleProfile::Strict));
  CHECK_FALSE(angle_constraints(betas(kPi / 3, kPi / 2), AngleProfile::Strict));
  CHECK(angle_constraints(betas(std::nextafter(kPi / 3, 4.0), kPi / 2), AngleProfile::Strict));
  CHECK_FALSE(angle_constraints(betas(0.9 * kPi, 0.4 * kPi), AngleProfile::Strict));
  CHECK(angle_constraints(betas(0.9 * kPi, 0.4 * kPi), AngleProfile::RelaxedQuarter));
  CHECK(angle_constraints(betas(0.9 * kPi, 0.4 * kPi), AngleProfile::RelaxedSixth));
  CHECK_FALSE(angle_constraints(betas(kPi / 5, kPi / 5), AngleProfile::RelaxedQuarter));
  CHECK(angle_constraints(betas(kPi / 5, kPi / 5), AngleProfile::RelaxedSixth));
  CHECK_FALSE(angle_constraints(betas(kTwoPi - kPi / 7, kTwoPi - kPi / 7), AngleProfile::RelaxedSixth));

  // Profiles nest.
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(0.0, kTwoPi);
  for (int i = 0; i < 10000; ++i) {
    const PolygonGeometry g = betas(U(rng), U(rng));
    if (angle_constraints(g, AngleProfile::Strict)) CHECK(angle_constraints(g, AngleProfile::RelaxedQuarter));
    if (angle_constraints(g, AngleProfile::RelaxedQuarter)) CHECK(angle_constraints(g, AngleProfile::RelaxedSixth));
  }
  CHECK(parse_angle_profile("relaxed_sixth") == AngleProfile::RelaxedSixth);
  CHECK(to_string(AngleProfile::RelaxedQuarter) == "relaxed_quarter");
  CHECK_THROWS_AS(parse_angle_profile("loose"), std::invalid_argument);
}

TEST_CASE("edge length bounds") {
  EdgeLengthBounds b = edge_length_bounds(0.7, 0.7);
  CHECK(b.delta == 0.0);
  CHECK(b.L_min == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(b.L_max == doctest::Approx(1.2).epsilon(1e-15));

  b = edge_length_bounds(0.3 * kPi, 0.1 * kPi);
  CHECK(b.delta == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(b.L_min == doctest::Approx(0.88).epsilon(1e-14));
  CHECK(b.L_max == doctest::Approx(2.4).epsilon(1e-14));

  b = edge_length_bounds(-0.2 * kPi, 0.2 * kPi);
  CHECK(b.delta == doctest::Approx(-0.4).epsilon(1e-14));
  CHECK(b.L_min == 0.27);
  CHECK(b.L_max == 0.58);

  b = edge_length_bounds(0.5, 0.0);
  CHECK(b.delta == 0.0);
  b = edge_length_bounds(0.1, -0.3);
  CHECK(b.delta == doctest::Approx(-0.4 / kPi).epsilon(1e-14));
}

TEST_CASE("zone boundary") {
  const ProjectionZone& z = ProjectionZone::get();
  CHECK(&z == &ProjectionZone::get());
  CHECK(z.boundary().size() == static_cast<std::size_t>(kBoundaryVertices));
  CHECK(z.anchors().size() == 16);
  CHECK(z.inside_boundary(kPi, kPi));
  CHECK_FALSE(z.inside_boundary(0.5, 0.5));
  CHECK_FALSE(z.inside_boundary(1.0, 1.0));
  CHECK(z.inside_boundary(1.1, 1.1));
  CHECK_FALSE(z.inside_boundary(6.0, 6.0));

  const Point2 given[] = {{1.05, 1.05}, {1.9, 1.3}, {kPi, 1.35}, {4.3, 1.3}, {5.2, kTwoPi - 5.2}};
  for (Point2 a : given) CHECK(distance_to_polyline(a, z.boundary()) < 1e-12);
  for (std::size_t i = 0; i < z.anchors().size(); ++i)
    CHECK((z.spline_at(static_cast<double>(i)) - z.anchors()[i]).norm() < 1e-12);

  for (std::size_t i = 0; i < z.boundary().size(); i += 7) {
    const Point2 p = z.boundary()[i];
    CHECK(distance_to_polyline({p.y, p.x}, z.boundary()) < 1e-6);
    CHECK(distance_to_polyline({kTwoPi - p.y, kTwoPi - p.x}, z.boundary()) < 1e-6);
  }

  // Simple closed curve: no two non-adjacent edges cross.
  const auto b = z.boundary();
  int crossings = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 2; j < b.size(); ++j) {
      if (i == 0 && j == b.size() - 1) continue;
      if (segments_intersect(b[i], b[(i + 1) % b.size()], b[j], b[(j + 1) % b.size()])) ++crossings;
    }
  CHECK(crossings == 0);
}

TEST_CASE("zone membership") {
  const CubicBezier arch = polygon(0.5, kPi - 0.5, 0.5, 0.5);
  const PolygonGeometry g = polygon_geometry(arch);
  CHECK_FALSE(g.inflectional);
  CHECK(zone_contains(g));
  CHECK(zone_contains_standard(arch));

  // Legs outside the edge-length bounds.
  CHECK_FALSE(zone_contains(polygon_geometry(polygon(0.5, kPi - 0.5, 0.05, 0.05))));
  CHECK_FALSE(zone_contains(polygon_geometry(polygon(0.5, kPi - 0.5, 1.5, 1.5))));

  // S-curves: Delta = -1, so L in [0.27, 0.58], plus the ratio cap.
  const double t1 = 0.5, t2 = -(kPi - 0.5);
  CHECK(polygon_geometry(polygon(t1, t2, 0.4, 0.4)).inflectional);
  CHECK(zone_contains(polygon_geometry(polygon(t1, t2, 0.4, 0.4))));
  CHECK(zone_contains(polygon_geometry(polygon(t1, t2, 0.36, 0.3))));
  CHECK_FALSE(zone_contains(polygon_geometry(polygon(t1, t2, 0.42, 0.3))));
  CHECK_FALSE(zone_contains(polygon_geometry(polygon(t1, t2, 0.3, 0.42))));

  // Crossing outer edges.
  const CubicBezier crossed = polygon(1.2, kPi - 1.2, 2.0, 2.0);
  CHECK(outer_edges_intersect(crossed));
  CHECK_FALSE(zone_contains_standard(crossed));

  // The polygon rebuilt from its geometry is the same polygon.
  const CubicBezier back = polygon_from_geometry(g);
  for (int i = 0; i < 4; ++i) CHECK((back.p[i] - arch.p[i]).norm() < 1e-14);
}

TEST_CASE("geometric projection") {
  const CubicBezier arch = polygon(0.5, kPi - 0.5, 0.5, 0.5);
  CHECK(geometric_project(arch) == arch);

  const CubicBezier tiny = polygon(0.5, kPi - 0.5, 0.05, 0.05);
  const GeometricProjection tp = geometric_project_report(tiny);
  CHECK(tp.reached_zone);
  CHECK(zone_contains_standard(tp.curve));
  const EdgeLengthBounds tb = edge_length_bounds(0.5, kPi - 0.5);
  CHECK(tp.L1 >= tb.L_min);
  CHECK(tp.L2 <= tb.L_max);

  const CubicBezier s_long = polygon(0.6, -(kPi - 0.6), 1.5, 1.2);
  const GeometricProjection sp = geometric_project_report(s_long);
  CHECK(sp.started_inflectional);
  CHECK(zone_contains_standard(sp.curve));

  // Steep tangents fail the strict profile.
  CHECK_THROWS_AS(geometric_project(polygon(2.5, 0.3, 0.5, 0.5)), AngleConstraintViolation);
  CHECK_THROWS_AS(geometric_project(CubicBezier({1, 1}, {2, 2}, {0, 3}, {1, 1})), DegenerateError);

  // Random strict-admissible inputs in world coordinates: every output lands in the zone
  // with end data intact and without crossing outer edges.
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  int tested = 0, failures = 0, inflection_gained = 0;
  while (tested < 10000) {
    const CubicBezier c({U(rng), U(rng)}, {U(rng), U(rng)}, {U(rng), U(rng)}, {U(rng), U(rng)});
    if ((c.p[3] - c.p[0]).norm() < 1e-3 || (c.p[1] - c.p[0]).norm() < 1e-6 || (c.p[2] - c.p[3]).norm() < 1e-6)
      continue;
    const StandardForm sf = standard_position(c);
    const PolygonGeometry g0 = polygon_geometry(sf.curve);
    if (!angle_constraints(g0, AngleProfile::Strict)) continue;
    ++tested;
    const GeometricProjection gp = geometric_project_report(c);
    const StandardForm out = standard_position(gp.curve);
    const bool ok = gp.reached_zone && zone_contains_standard(out.curve) && !outer_edges_intersect(out.curve) &&
                    gp.curve.p[0] == c.p[0] && gp.curve.p[3] == c.p[3] &&
                    std::abs(wrap_pi(unit_angle(gp.curve.p[1] - gp.curve.p[0]) - unit_angle(c.p[1] - c.p[0]))) < 1e-12 &&
                    std::abs(wrap_pi(unit_angle(gp.curve.p[2] - gp.curve.p[3]) - unit_angle(c.p[2] - c.p[3]))) < 1e-12;
    if (!ok) ++failures;
    // Classification happens after untangling and clamping; from there the class may only
    // be lost.
    if (!gp.started_inflectional && polygon_geometry(out.curve).inflectional) ++inflection_gained;
    if (gp.became_noninflectional && polygon_geometry(out.curve).inflectional) ++inflection_gained;
  }
  CHECK(failures == 0);
  CHECK(inflection_gained == 0);
}

TEST_CASE("edge lengths rebuilt in world space") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const CubicBezier c = test::random_curve(rng);
    const CubicBezier w = with_standard_edge_lengths(c, 0.3, 0.7);
    CHECK(w.p[0] == c.p[0]);
    CHECK(w.p[3] == c.p[3]);
    const PolygonGeometry g = polygon_geometry(standard_position(w).curve);
    CHECK(g.L1 == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(g.L2 == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(std::abs(wrap_pi(unit_angle(w.p[1] - w.p[0]) - unit_angle(c.p[1] - c.p[0]))) < 1e-12);
  }
}
