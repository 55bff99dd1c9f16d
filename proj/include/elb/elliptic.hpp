#pragma once

#include <utility>

namespace elb {

/// Elliptic modulus k >= 0. The classical functions cover k in [0, 1]; for k > 1 the
/// reciprocal-modulus transformation is used:
///   sn(s,k) = sn(ks,1/k)/k,  cn(s,k) = dn(ks,1/k),  dn(s,k) = cn(ks,1/k),
/// which keeps sn^2 + cn^2 = 1, dn^2 + k^2 sn^2 = 1 and d/ds E(s,k) = dn(s,k)^2.
struct JacobiValues {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
  /// E(s,k) = integral of dn^2 from 0 to s (Jacobi's epsilon function).
  double E = 0.0;
};

/// All four values in one AGM pass.
JacobiValues jacobi(double s, double k);

double jacobi_cn(double s, double k);
std::pair<double, double> jacobi_sn_dn(double s, double k);
double elliptic_E_inc(double s, double k);

/// Complete integral of the first kind K(k) for 0 <= k < 1.
double complete_K(double k);
/// Complete integral of the second kind E(k) for 0 <= k <= 1.
double complete_E(double k);

/// Inverse of the amplitude function for 0 <= k <= 1: returns u with am(u, k) = phi.
/// Continuous and increasing in phi (unwrapped across quarter periods).
double inverse_am(double phi, double k);

/// Real period of cn(., k): 4K(k) for k < 1, 2K(1/k)/k for k > 1; infinite at k = 1.
double cn_period(double k);

}  // namespace elb
