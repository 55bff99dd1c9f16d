#pragma once

#include <functional>
#include <string_view>

#include "elb/geom.hpp"

namespace elb {

/// Least-squares fit of the affine curvature law kappa + l1*y - l2*x - alpha = 0 along a
/// curve, weighted by arc length, and its normalized residual e_lambda.
struct LambdaFit {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double alpha = 0.0;
  double e_lambda = 0.0;
  double energy = 0.0;  // integral of kappa^2 ds
  bool straight_line = false;
};

enum class QualityClass { Best, Good, Borderline, Reject };

inline constexpr double kBestMax = 0.22;
inline constexpr double kGoodMax = 0.4;
inline constexpr double kBorderlineMax = 0.5;

QualityClass classify(double e_lambda);
std::string_view to_string(QualityClass q);

/// A planar curve given by callables on [t0, t1].
struct ParametricCurve {
  std::function<Point2(double)> position;
  std::function<double(double)> curvature;
  std::function<double(double)> speed;  // ds/dt
  /// Tangent direction angle; optional, used by the elastica fitter.
  std::function<double(double)> tangent_angle;
  double t0 = 0.0;
  double t1 = 1.0;
};

LambdaFit residual_of_parametric(const ParametricCurve& curve);

LambdaFit lambda_fit(const CubicBezier& curve);

/// The ParametricCurve view of a Bezier curve on [0, 1].
ParametricCurve as_parametric(const CubicBezier& curve);

/// Convenience: lambda_fit(curve).e_lambda.
double e_lambda(const CubicBezier& curve);

/// Bending energy integral of kappa^2 ds.
double bending_energy(const CubicBezier& curve);

}  // namespace elb
