#include "elb/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace elb {
namespace {

constexpr int kMaxLevels = 16;
constexpr double kPi = std::numbers::pi;

/// Arithmetic-geometric mean ladder a_n, c_n for 0 <= k < 1.
struct Agm {
  std::array<double, kMaxLevels + 1> a{};
  std::array<double, kMaxLevels + 1> c{};
  int levels = 0;  // N: index of the last level
  double K = kPi / 2;
  double E = kPi / 2;
};

Agm agm_ladder(double k) {
  Agm g;
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  double c = k;
  g.a[0] = a;
  g.c[0] = c;
  double sum = 0.5 * c * c;  // sum of 2^(n-1) c_n^2
  double pow2 = 0.5;
  int n = 0;
  while (std::abs(c) > 1e-16 * a && n < kMaxLevels) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    ++n;
    pow2 *= 2.0;
    g.a[n] = a;
    g.c[n] = c;
    sum += pow2 * c * c;
  }
  g.levels = n;
  g.K = kPi / (2.0 * a);
  g.E = g.K * (1.0 - sum);
  return g;
}

/// Classical case 0 <= k < 1 via the descending Landen (AGM) recursion.
JacobiValues jacobi_classical(double u, double k) {
  if (k == 0.0) return {std::sin(u), std::cos(u), 1.0, u};
  const Agm g = agm_ladder(k);
  // Reduce to [-K, K]: sn, cn flip sign every 2K, dn is 2K-periodic, E gains 2E(k).
  const double half_period = 2.0 * g.K;
  const double j = std::nearbyint(u / half_period);
  const double u0 = u - j * half_period;

  std::array<double, kMaxLevels + 1> phi{};
  const int N = g.levels;
  phi[N] = std::ldexp(g.a[N] * u0, N);
  for (int n = N; n > 0; --n) {
    phi[n - 1] = 0.5 * (phi[n] + std::asin(g.c[n] / g.a[n] * std::sin(phi[n])));
  }
  double zeta = 0.0;
  for (int n = 1; n <= N; ++n) zeta += g.c[n] * std::sin(phi[n]);

  JacobiValues v;
  v.sn = std::sin(phi[0]);
  v.cn = std::cos(phi[0]);
  v.dn = std::sqrt((1.0 - k * v.sn) * (1.0 + k * v.sn));
  v.E = u0 * g.E / g.K + zeta + 2.0 * j * g.E;
  if (static_cast<long long>(j) % 2 != 0) {
    v.sn = -v.sn;
    v.cn = -v.cn;
  }
  return v;
}

JacobiValues jacobi_separatrix(double u) {
  const double sech = 1.0 / std::cosh(u);
  const double th = std::tanh(u);
  return {th, sech, sech, th};
}

}  // namespace

JacobiValues jacobi(double s, double k) {
  if (k < 1.0) return jacobi_classical(s, k);
  if (k == 1.0) return jacobi_separatrix(s);
  const double m = 1.0 / k;
  const double u = k * s;
  const JacobiValues r = jacobi_classical(u, m);
  JacobiValues v;
  v.sn = r.sn / k;
  v.cn = r.dn;
  v.dn = r.cn;
  v.E = k * r.E - (k * k - 1.0) * s;
  return v;
}

double jacobi_cn(double s, double k) { return jacobi(s, k).cn; }

std::pair<double, double> jacobi_sn_dn(double s, double k) {
  const JacobiValues v = jacobi(s, k);
  return {v.sn, v.dn};
}

double elliptic_E_inc(double s, double k) { return jacobi(s, k).E; }

double complete_K(double k) {
  if (k >= 1.0) return std::numeric_limits<double>::infinity();
  return agm_ladder(k).K;
}

double complete_E(double k) {
  if (k >= 1.0) return 1.0;
  return agm_ladder(k).E;
}

double cn_period(double k) {
  if (k < 1.0) return 4.0 * complete_K(k);
  if (k == 1.0) return std::numeric_limits<double>::infinity();
  return 2.0 * complete_K(1.0 / k) / k;
}

double inverse_am(double phi, double k) {
  // am(u + 2K) = am(u) + pi, so reduce phi to (-pi/2, pi/2].
  const double j = std::nearbyint(phi / kPi);
  const double phi0 = phi - j * kPi;
  if (k >= 1.0) {
    // F(phi, 1) = asinh(tan(phi)); only the principal branch exists.
    return std::asinh(std::tan(phi));
  }
  const double K = complete_K(k);
  // am is increasing on [-K, K] with am(+-K) = +-pi/2; safeguarded Newton.
  double lo = -K;
  double hi = K;
  double u = phi0 / (kPi / 2) * K;
  for (int it = 0; it < 200; ++it) {
    const JacobiValues v = jacobi_classical(u, k);
    const double am = std::atan2(v.sn, v.cn);
    const double f = am - phi0;
    if (f > 0.0) hi = u; else lo = u;
    double next = u - f / std::max(v.dn, 1e-300);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-15 * std::max(1.0, std::abs(u))) {
      u = next;
      break;
    }
    u = next;
  }
  return u + 2.0 * j * K;
}

}  // namespace elb
