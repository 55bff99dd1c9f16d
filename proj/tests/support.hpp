#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "elb/geom.hpp"

namespace elb::test {

/// Composite Simpson rule on n (even) intervals; an oracle independent of the library's
/// Gauss-Legendre quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline Similarity random_similarity(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Similarity s;
  s.scale = std::exp(2.0 * U(rng));
  s.rotation = 3.0 * U(rng);
  s.translation = {5.0 * U(rng), 5.0 * U(rng)};
  return s;
}

inline CubicBezier random_curve(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (;;) {
    CubicBezier c({U(rng), U(rng)}, {U(rng), U(rng)}, {U(rng), U(rng)}, {U(rng), U(rng)});
    if ((c.p[3] - c.p[0]).norm() > 0.2 && (c.p[1] - c.p[0]).norm() > 0.05 && (c.p[2] - c.p[3]).norm() > 0.05)
      return c;
  }
}

}  // namespace elb::test
