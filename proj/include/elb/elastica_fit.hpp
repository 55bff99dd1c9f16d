#pragma once

#include "elb/elastica.hpp"
#include "elb/geom.hpp"
#include "elb/residual.hpp"

namespace elb {

/// Scale-invariant L2 distance between a Bezier curve and an elastica segment, comparing
/// gamma_B(t) with gamma_e(s(t)/L) where s is the Bezier arc length and L its total.
double l2_distance(const CubicBezier& bezier, const ElasticaSegment& seg);
double l2_distance(const ParametricCurve& curve, const ElasticaSegment& seg);

/// H1 distance: the L2 term plus the squared difference of continuously unwrapped tangent
/// angles, weighted by ds/L.
double h1_distance(const CubicBezier& bezier, const ElasticaSegment& seg);
double h1_distance(const ParametricCurve& curve, const ElasticaSegment& seg);

/// Parametric view of a segment on u in [0, 1], with analytic curvature and continuous
/// tangent angle.
ParametricCurve as_parametric(const ElasticaSegment& seg);

struct FitResult {
  ElasticaSegment segment;
  ElasticaSegment first_guess;
  double l2 = 0.0;
  double h1 = 0.0;
  double first_guess_l2 = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = true;
  bool straight_line = false;
};

/// Elastica segment recovered from the affine-curvature (lambda) fit. Straight curves give
/// the k = 0 chord segment.
ElasticaSegment first_guess(const CubicBezier& curve);
ElasticaSegment first_guess(const ParametricCurve& curve);

struct RefineOptions {
  int max_evaluations = 2000;
  double step_tolerance = 1e-9;
  /// Extra starts (alternative k, mirror flag) tried when the result from `init` is worse
  /// than this distance.
  double restart_above = 1e-4;
  int restarts = 3;
};

/// Local minimisation of l2_distance over all segment parameters starting at init.
/// Never worse than init; reports non-convergence instead of failing.
FitResult refine(const CubicBezier& curve, const ElasticaSegment& init, const RefineOptions& options = {});
FitResult refine(const ParametricCurve& curve, const ElasticaSegment& init,
                 const RefineOptions& options = {});

/// first_guess followed by refine.
FitResult fit_elastica(const CubicBezier& curve, const RefineOptions& options = {});
FitResult fit_elastica(const ParametricCurve& curve, const RefineOptions& options = {});

}  // namespace elb
