#include <doctest.h>

#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <vector>

#include "elb/elliptic.hpp"
#include "support.hpp"

using namespace elb;

namespace {

const std::vector<double> kModuli{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 1.0, 1.5, 3.0, 10.0};

// dn^2 for any k, from Boost; k > 1 via the reciprocal-modulus map.
double dn2_boost(double s, double k) {
  double cn = 0.0, dn = 0.0;
  if (k <= 1.0) {
    boost::math::jacobi_elliptic(k, s, &cn, &dn);
    return dn * dn;
  }
  boost::math::jacobi_elliptic(1.0 / k, k * s, &cn, &dn);
  return cn * cn;
}

}  // namespace

TEST_CASE("values at the origin and degenerate moduli") {
  for (double k : kModuli) {
    const JacobiValues v = jacobi(0.0, k);
    CHECK(v.sn == 0.0);
    CHECK(v.cn == doctest::Approx(1.0));
    CHECK(v.dn == doctest::Approx(1.0));
    CHECK(std::abs(v.E) < 1e-15);
  }
  for (double s = -7.0; s <= 7.0; s += 0.37) {
    CHECK(std::abs(jacobi_cn(s, 0.0) - std::cos(s)) < 1e-14);
    const auto [sn, dn] = jacobi_sn_dn(s, 0.0);
    CHECK(std::abs(sn - std::sin(s)) < 1e-14);
    CHECK(dn == 1.0);
    CHECK(std::abs(elliptic_E_inc(s, 0.0) - s) < 1e-13);
    CHECK(std::abs(jacobi_cn(s, 1.0) - 1.0 / std::cosh(s)) < 1e-14);
    CHECK(std::abs(elliptic_E_inc(s, 1.0) - std::tanh(s)) < 1e-14);
  }
}

TEST_CASE("matches Boost for k <= 1") {
  for (double k : kModuli) {
    if (k > 1.0) continue;
    for (double s = -20.0; s <= 20.0; s += 0.173) {
      double cn = 0.0, dn = 0.0;
      const double sn = boost::math::jacobi_elliptic(k, s, &cn, &dn);
      const JacobiValues v = jacobi(s, k);
      CHECK(std::abs(v.sn - sn) < 1e-12);
      CHECK(std::abs(v.cn - cn) < 1e-12);
      CHECK(std::abs(v.dn - dn) < 1e-12);
    }
  }
}

TEST_CASE("reciprocal-modulus extension matches Boost") {
  for (double k : {1.1, 1.5, 3.0, 10.0}) {
    for (double s = -5.0; s <= 5.0; s += 0.091) {
      double cn = 0.0, dn = 0.0;
      const double sn = boost::math::jacobi_elliptic(1.0 / k, k * s, &cn, &dn);
      const JacobiValues v = jacobi(s, k);
      CHECK(std::abs(v.sn - sn / k) < 1e-12);
      CHECK(std::abs(v.cn - dn) < 1e-12);
      CHECK(std::abs(v.dn - cn) < 1e-12);
    }
  }
}

TEST_CASE("Pythagorean identities over the grid") {
  double worst = 0.0;
  for (double k : kModuli) {
    for (double s = -20.0; s <= 20.0; s += 0.05) {
      const JacobiValues v = jacobi(s, k);
      worst = std::max(worst, std::abs(v.sn * v.sn + v.cn * v.cn - 1.0));
      worst = std::max(worst, std::abs(v.dn * v.dn + k * k * v.sn * v.sn - 1.0));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("E is the integral of dn^2") {
  for (double k : {0.3, 0.8, 0.99, 1.0, 1.5, 3.0}) {
    for (double s : {-3.0, -0.7, 0.4, 1.9, 4.5}) {
      const double oracle = test::simpson([&](double t) { return dn2_boost(t, k); }, 0.0, s, 4000);
      CHECK(std::abs(elliptic_E_inc(s, k) - oracle) < 1e-10);
    }
    // Derivative by central differences.
    for (double s = -4.0; s <= 4.0; s += 0.5) {
      const double h = 1e-5;
      const double d = (elliptic_E_inc(s + h, k) - elliptic_E_inc(s - h, k)) / (2 * h);
      const JacobiValues v = jacobi(s, k);
      CHECK(std::abs(d - v.dn * v.dn) < 1e-8);
    }
  }
}

TEST_CASE("E is odd and K-periodic structure") {
  for (double k : {0.2, 0.7, 0.95}) {
    const double K = complete_K(k);
    const JacobiValues q = jacobi(K, k);
    CHECK(std::abs(q.sn - 1.0) < 1e-12);
    CHECK(std::abs(q.cn) < 1e-12);
    CHECK(std::abs(q.dn - std::sqrt(1 - k * k)) < 1e-12);
    CHECK(std::abs(q.E - complete_E(k)) < 1e-12);
    for (double s = -6.0; s <= 6.0; s += 0.7) {
      CHECK(std::abs(jacobi_cn(s + 4 * K, k) - jacobi_cn(s, k)) < 1e-10);
      CHECK(std::abs(elliptic_E_inc(-s, k) + elliptic_E_inc(s, k)) < 1e-13);
    }
    CHECK(std::abs(cn_period(k) - 4 * K) < 1e-12);
  }
  CHECK(std::isinf(cn_period(1.0)));
  CHECK(std::abs(cn_period(2.0) - 2 * complete_K(0.5) / 2.0) < 1e-12);
}

TEST_CASE("continuity across k = 1") {
  for (double s = -4.0; s <= 4.0; s += 0.25) {
    const JacobiValues lo = jacobi(s, 1.0 - 1e-10);
    const JacobiValues hi = jacobi(s, 1.0 + 1e-10);
    const JacobiValues at = jacobi(s, 1.0);
    for (const JacobiValues* v : {&lo, &hi}) {
      CHECK(std::abs(v->sn - at.sn) < 1e-8);
      CHECK(std::abs(v->cn - at.cn) < 1e-8);
      CHECK(std::abs(v->dn - at.dn) < 1e-8);
      CHECK(std::abs(v->E - at.E) < 1e-8);
    }
  }
}

TEST_CASE("inverse amplitude") {
  for (double k : {0.0, 0.4, 0.9, 0.999}) {
    for (double u = -5.0; u <= 5.0; u += 0.3) {
      const JacobiValues v = jacobi(u, k);
      const double phi = inverse_am(std::atan2(v.sn, v.cn), k);
      // Same point modulo the real period.
      const JacobiValues w = jacobi(phi, k);
      CHECK(std::abs(w.sn - v.sn) < 1e-10);
      CHECK(std::abs(w.cn - v.cn) < 1e-10);
    }
    double prev = -1e300;
    for (double phi = -4.0; phi <= 4.0; phi += 0.1) {
      const double u = inverse_am(phi, k);
      CHECK(u > prev);
      prev = u;
    }
  }
}
