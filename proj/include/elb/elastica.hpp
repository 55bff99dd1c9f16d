#pragma once

#include "elb/geom.hpp"

namespace elb {

/// Canonical elastica xi_k(s) = (2E(s,k) - s, 2k(1 - cn(s,k))), unit speed in s.
Point2 xi_eval(double s, double k);

/// Signed curvature 2k cn(s,k) of xi_k.
double xi_curvature(double s, double k);

/// Position, unit tangent angle and curvature of xi_k at s in one elliptic evaluation.
struct XiSample {
  Point2 pos;
  Point2 tangent;  // (2dn^2 - 1, 2k sn dn)
  double curvature = 0.0;
};

XiSample xi_sample(double s, double k);

/// A piece of xi_k placed in the plane. `mirrored` reflects xi_k about its x-axis before
/// the placement; this is needed for orbit-like (k > 1) pieces that turn clockwise, since
/// the placement is orientation-preserving.
struct ElasticaSegment {
  double k = 0.0;
  double s_start = 0.0;
  double s_end = 1.0;
  Similarity placement{};
  bool mirrored = false;

  double length() const { return placement.scale * (s_end - s_start); }
};

/// Cap on s_end - s_start, in real periods of cn.
inline constexpr double kMaxSegmentPeriods = 8.0;

/// Point at fraction u of the arc, u in [0, 1].
Point2 segment_eval(const ElasticaSegment& seg, double u);

/// Unit tangent angle (world frame) at fraction u, not unwrapped.
double segment_tangent_angle(const ElasticaSegment& seg, double u);

/// Canonical point to world point for this segment (applies the mirror and placement).
Point2 segment_place(const ElasticaSegment& seg, Point2 canonical);

}  // namespace elb
