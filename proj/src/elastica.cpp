#include "elb/elastica.hpp"

#include "elb/elliptic.hpp"

namespace elb {

Point2 xi_eval(double s, double k) {
  const JacobiValues v = jacobi(s, k);
  return {2.0 * v.E - s, 2.0 * k * (1.0 - v.cn)};
}

double xi_curvature(double s, double k) { return 2.0 * k * jacobi(s, k).cn; }

XiSample xi_sample(double s, double k) {
  const JacobiValues v = jacobi(s, k);
  XiSample out;
  out.pos = {2.0 * v.E - s, 2.0 * k * (1.0 - v.cn)};
  out.tangent = {2.0 * v.dn * v.dn - 1.0, 2.0 * k * v.sn * v.dn};
  out.curvature = 2.0 * k * v.cn;
  return out;
}

Point2 segment_place(const ElasticaSegment& seg, Point2 canonical) {
  if (seg.mirrored) canonical.y = -canonical.y;
  return seg.placement.apply(canonical);
}

Point2 segment_eval(const ElasticaSegment& seg, double u) {
  const double s = seg.s_start + u * (seg.s_end - seg.s_start);
  return segment_place(seg, xi_eval(s, seg.k));
}

double segment_tangent_angle(const ElasticaSegment& seg, double u) {
  const double s = seg.s_start + u * (seg.s_end - seg.s_start);
  Point2 t = xi_sample(s, seg.k).tangent;
  if (seg.mirrored) t.y = -t.y;
  return t.angle() + seg.placement.rotation;
}

}  // namespace elb
