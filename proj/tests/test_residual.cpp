#include <doctest.h>

#include "elb/elastica.hpp"
#include "elb/elastica_fit.hpp"
#include "elb/residual.hpp"
#include "support.hpp"

using namespace elb;

namespace {

ParametricCurve circle_arc(double r, double a0, double a1) {
  ParametricCurve c;
  c.t0 = a0;
  c.t1 = a1;
  c.position = [r](double t) { return Point2{r * std::cos(t), r * std::sin(t)}; };
  c.speed = [r](double) { return r; };
  c.curvature = [r](double) { return 1.0 / r; };
  return c;
}

double residual_integral(const CubicBezier& c, double l1, double l2, double a) {
  return test::simpson(
      [&](double t) {
        const Point2 p = c.eval(t);
        const double r = c.curvature(t) + l1 * p.y - l2 * p.x - a;
        return r * r * c.d1(t).norm();
      },
      0.0, 1.0, 4000);
}

}  // namespace

TEST_CASE("classification thresholds") {
  CHECK(classify(0.0) == QualityClass::Best);
  CHECK(classify(0.22) == QualityClass::Best);
  CHECK(classify(0.2200001) == QualityClass::Good);
  CHECK(classify(0.4) == QualityClass::Good);
  CHECK(classify(0.5) == QualityClass::Borderline);
  CHECK(classify(0.51) == QualityClass::Reject);
  CHECK(to_string(QualityClass::Borderline) == "Borderline");
}

TEST_CASE("circle and straight line") {
  const LambdaFit arc = residual_of_parametric(circle_arc(2.0, 0.3, 2.0));
  CHECK(arc.e_lambda < 1e-10);
  CHECK(std::abs(arc.alpha - 0.5) < 1e-8);

  const LambdaFit line = lambda_fit(CubicBezier({0, 0}, {0.3, 0.1}, {0.6, 0.2}, {0.9, 0.3}));
  CHECK(line.straight_line);
  CHECK(line.e_lambda == 0.0);
}

TEST_CASE("elastica segments have zero residual") {
  for (double k : {0.2, 0.7, 0.95, 1.0, 1.3, 3.0}) {
    for (bool mirrored : {false, true}) {
      const ElasticaSegment seg{k, -0.8, 2.1, {1.7, 0.4, {0.3, -2.0}}, mirrored};
      const LambdaFit f = residual_of_parametric(as_parametric(seg));
      CHECK(f.e_lambda < 1e-6);
    }
  }
}

TEST_CASE("invariance and symmetries") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const CubicBezier c = test::random_curve(rng);
    const double e = e_lambda(c);
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
    CHECK(std::abs(e_lambda(c.transformed(test::random_similarity(rng))) - e) < 1e-10);
    CubicBezier m = c;
    for (Point2& p : m.p) p.y = -p.y;
    CHECK(std::abs(e_lambda(m) - e) < 1e-10);
  }
}

TEST_CASE("reparameterization t -> t^2 leaves e_lambda unchanged") {
  const CubicBezier c({0, 0}, {0.2, 0.7}, {1.1, -0.3}, {1, 0.4});
  ParametricCurve p;
  p.t0 = 0.0;
  p.t1 = 1.0;
  p.position = [c](double u) { return c.eval(u * u); };
  p.speed = [c](double u) { return c.d1(u * u).norm() * 2 * u; };
  p.curvature = [c](double u) { return c.curvature_or_zero(u * u); };
  CHECK(std::abs(residual_of_parametric(p).e_lambda - e_lambda(c)) < 1e-8);
}

TEST_CASE("normal equations are optimal") {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 20; ++i) {
    const CubicBezier c = test::random_curve(rng);
    const LambdaFit f = lambda_fit(c);
    if (f.straight_line) continue;
    const double base = residual_integral(c, f.lambda1, f.lambda2, f.alpha);
    CHECK(std::abs(std::sqrt(base / f.energy) - f.e_lambda) < 1e-6);
    for (int j = 0; j < 3; ++j) {
      for (double d : {-1e-4, 1e-4}) {
        double l1 = f.lambda1, l2 = f.lambda2, a = f.alpha;
        (j == 0 ? l1 : j == 1 ? l2 : a) += d;
        CHECK(residual_integral(c, l1, l2, a) >= base * (1 - 1e-9));
      }
    }
  }
}

TEST_CASE("determinism") {
  const CubicBezier c({0, 0}, {0.1, 0.9}, {0.8, -0.6}, {1, 0});
  const LambdaFit a = lambda_fit(c), b = lambda_fit(c);
  CHECK(a.e_lambda == b.e_lambda);
  CHECK(a.lambda1 == b.lambda1);
  CHECK(a.alpha == b.alpha);
}
