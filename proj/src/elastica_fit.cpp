#include "elb/elastica_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "elb/elliptic.hpp"
#include "elb/quadrature.hpp"
#include "elb/residual.hpp"

namespace elb {
namespace {

using cplx = std::complex<double>;

/// Cumulative arc length of a Bezier curve, exact to quadrature precision at any t.
class ArcLengthMap {
 public:
  explicit ArcLengthMap(const ParametricCurve& c) : curve_(c) {
    const double ell = std::max(quad::integrate(c.speed, c.t0, c.t1, 1e-10), 1e-300);
    panels_ = quad::adaptive_panels([&](double t) { return c.speed(t) / ell; }, c.t0, c.t1, 1e-14);
    cum_.assign(panels_.size() + 1, 0.0);
    for (std::size_t i = 0; i < panels_.size(); ++i)
      cum_[i + 1] = cum_[i] + piece(panels_[i].a, panels_[i].b);
  }

  double total() const { return cum_.back(); }

  double at(double t) const {
    auto it = std::upper_bound(panels_.begin(), panels_.end(), t,
                               [](double v, const quad::Panel& p) { return v < p.b; });
    if (it == panels_.end()) return total();
    const std::size_t i = static_cast<std::size_t>(it - panels_.begin());
    return cum_[i] + piece(panels_[i].a, t);
  }

 private:
  double piece(double a, double b) const {
    if (b <= a) return 0.0;
    const quad::Rule& r = quad::gauss_legendre(24);
    const double h = 0.5 * (b - a);
    const double m = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t j = 0; j < r.nodes.size(); ++j) s += r.weights[j] * curve_.speed(m + h * r.nodes[j]);
    return s * h;
  }

  const ParametricCurve& curve_;
  std::vector<quad::Panel> panels_;
  std::vector<double> cum_;
};

/// Amplitude am(u, k) for k <= 1, continuous in u.
double amplitude(double u, double k) {
  if (k >= 1.0) return 2.0 * std::atan(std::tanh(0.5 * u));
  if (k == 0.0) return u;
  const double K = complete_K(k);
  const double j = std::nearbyint(u / (2.0 * K));
  const JacobiValues v = jacobi(u - 2.0 * j * K, k);
  return j * kPi + std::atan2(v.sn, v.cn);
}

/// Continuous tangent angle of xi_k at s (zero at s = 0).
double xi_tangent_angle(double s, double k) {
  if (k == 0.0) return 0.0;
  if (k < 1.0) {
    const JacobiValues v = jacobi(s, k);
    return 2.0 * std::atan2(k * v.sn, v.dn);
  }
  if (k == 1.0) return 2.0 * amplitude(s, 1.0);
  return 2.0 * amplitude(k * s, 1.0 / k);
}

/// World tangent angle of a segment, continuous in u.
double segment_angle_continuous(const ElasticaSegment& seg, double u) {
  const double s = seg.s_start + u * (seg.s_end - seg.s_start);
  const double a = xi_tangent_angle(s, seg.k);
  return (seg.mirrored ? -a : a) + seg.placement.rotation;
}

/// Tangent angle of a curve; numerical when the curve does not provide one.
double raw_angle(const ParametricCurve& c, double t) {
  if (c.tangent_angle) return c.tangent_angle(t);
  const double h = 1e-6 * (c.t1 - c.t0);
  const double a = std::max(c.t0, t - h);
  const double b = std::min(c.t1, t + h);
  return (c.position(b) - c.position(a)).angle();
}

/// Continuous tangent angle of a curve, unwrapped against a dense table.
class CurveAngle {
 public:
  explicit CurveAngle(const ParametricCurve& c) : curve_(c), table_(kSamples + 1) {
    double prev = raw_angle(c, c.t0);
    for (int i = 0; i <= kSamples; ++i) {
      const double a = raw_angle(c, param(i));
      prev = prev + wrap_pi(a - prev);
      table_[i] = prev;
    }
  }
  double at(double t) const {
    const double f = (t - curve_.t0) / (curve_.t1 - curve_.t0);
    const int i = std::clamp(static_cast<int>(std::lround(f * kSamples)), 0, kSamples);
    return table_[i] + wrap_pi(raw_angle(curve_, t) - table_[i]);
  }

 private:
  double param(int i) const { return curve_.t0 + (curve_.t1 - curve_.t0) * i / kSamples; }

  static constexpr int kSamples = 2048;
  const ParametricCurve& curve_;
  std::vector<double> table_;
};

/// Adaptive integral of f over the curve parameter, driven by the integrand itself.
template <class F>
double integrate_over(const ParametricCurve& c, F&& f) {
  return quad::integrate(std::function<double(double)>(f), c.t0, c.t1, 1e-11, 1e-26);
}

double l2_squared(const ParametricCurve& c, const ElasticaSegment& seg, const ArcLengthMap& arc) {
  const double L = arc.total();
  const double L3 = L * L * L;
  return integrate_over(c, [&](double t) {
    const Point2 d = c.position(t) - segment_eval(seg, arc.at(t) / L);
    return dot(d, d) * c.speed(t) / L3;
  });
}

// ---------------------------------------------------------------------------------------
// Discretised objective used by the optimiser. For fixed (k, s_start, s_end, mirrored)
// the best similarity is a weighted complex linear least-squares problem, solved in
// closed form; only the three shape parameters are iterated.

struct FitData {
  std::vector<double> t;
  std::vector<cplx> z;    // curve points
  std::vector<double> u;  // arc-length fraction
  std::vector<double> w;  // quadrature weight * speed / L^3
  double length = 0.0;
  double zz = 0.0;        // weighted centered second moment of z
};

FitData make_fit_data(const ParametricCurve& c) {
  const ArcLengthMap arc(c);
  FitData d;
  d.length = arc.total();
  const double ell = std::max(d.length, 1e-300);
  auto proxy = [&](double t) {
    const double k = c.curvature(t) * ell;
    return c.speed(t) / ell * (1.0 + k * k);
  };
  std::vector<quad::Panel> panels = quad::adaptive_panels(proxy, c.t0, c.t1, 1e-8);
  // At least 8 panels so the elastica side is resolved even for gentle curves.
  while (panels.size() < 8) {
    std::vector<quad::Panel> split;
    for (const auto& p : panels) {
      const double m = 0.5 * (p.a + p.b);
      split.push_back({p.a, m});
      split.push_back({m, p.b});
    }
    panels.swap(split);
  }
  const quad::NodeSet ns = quad::nodes_on(panels, 16);
  const double L3 = ell * ell * ell;
  cplx zbar = 0.0;
  double W = 0.0;
  for (std::size_t i = 0; i < ns.t.size(); ++i) {
    const double t = ns.t[i];
    const Point2 p = c.position(t);
    d.t.push_back(t);
    d.z.emplace_back(p.x, p.y);
    d.u.push_back(arc.at(t) / ell);
    d.w.push_back(ns.w[i] * c.speed(t) / L3);
    zbar += d.w.back() * d.z.back();
    W += d.w.back();
  }
  zbar /= W;
  for (std::size_t i = 0; i < d.z.size(); ++i) d.zz += d.w[i] * std::norm(d.z[i] - zbar);
  return d;
}

struct Shape {
  double k = 0.0;
  double s0 = 0.0;
  double s1 = 1.0;
  bool mirrored = false;
};

struct Projected {
  double objective = std::numeric_limits<double>::infinity();  // squared discrete l2
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};
};

bool shape_valid(const Shape& sh) {
  if (!(sh.k >= 0.0) || !std::isfinite(sh.k) || !(sh.s1 > sh.s0)) return false;
  const double period = cn_period(sh.k);
  if (std::isfinite(period) && sh.s1 - sh.s0 > kMaxSegmentPeriods * period) return false;
  return std::isfinite(sh.s0) && std::isfinite(sh.s1);
}

/// Optimal placement for a shape; fills `resid` with weighted residuals when non-null.
Projected project(const FitData& d, const Shape& sh, std::vector<double>* resid = nullptr) {
  Projected out;
  if (!shape_valid(sh)) return out;
  const std::size_t n = d.z.size();
  std::vector<cplx> zeta(n);
  double W = 0.0;
  cplx zb = 0.0;
  cplx eb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 q = xi_eval(sh.s0 + d.u[i] * (sh.s1 - sh.s0), sh.k);
    zeta[i] = cplx(q.x, sh.mirrored ? -q.y : q.y);
    W += d.w[i];
    zb += d.w[i] * d.z[i];
    eb += d.w[i] * zeta[i];
  }
  zb /= W;
  eb /= W;
  cplx num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx e = zeta[i] - eb;
    num += d.w[i] * std::conj(e) * (d.z[i] - zb);
    den += d.w[i] * std::norm(e);
  }
  if (!(den > 0.0)) return out;
  out.a = num / den;
  out.b = zb - out.a * eb;
  if (resid) {
    resid->resize(2 * n);
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx r = std::sqrt(d.w[i]) * (d.z[i] - out.a * zeta[i] - out.b);
      (*resid)[2 * i] = r.real();
      (*resid)[2 * i + 1] = r.imag();
      obj += std::norm(r);
    }
    out.objective = obj;
  } else {
    out.objective = std::max(d.zz - std::norm(num) / den, 0.0);
  }
  return out;
}

ElasticaSegment to_segment(const Shape& sh, const Projected& pr) {
  ElasticaSegment seg;
  seg.k = sh.k;
  seg.s_start = sh.s0;
  seg.s_end = sh.s1;
  seg.mirrored = sh.mirrored;
  seg.placement.scale = std::abs(pr.a);
  seg.placement.rotation = std::arg(pr.a);
  seg.placement.translation = {pr.b.real(), pr.b.imag()};
  return seg;
}

// Optimiser coordinates: (log k, m s0, m s1) with m = sqrt(1 + k^2), which keeps the
// phase coordinates O(1) per period for both small and large k.
constexpr double kLogKMin = -30.0;
constexpr double kLogKMax = 14.0;

std::array<double, 3> to_coords(const Shape& sh) {
  const double k = std::max(sh.k, std::exp(kLogKMin));
  const double m = std::sqrt(1.0 + k * k);
  return {std::log(k), m * sh.s0, m * sh.s1};
}

Shape from_coords(const std::array<double, 3>& x, bool mirrored) {
  Shape sh;
  sh.k = std::exp(std::clamp(x[0], kLogKMin, kLogKMax));
  const double m = std::sqrt(1.0 + sh.k * sh.k);
  sh.s0 = x[1] / m;
  sh.s1 = x[2] / m;
  sh.mirrored = mirrored;
  return sh;
}

struct LmOutcome {
  Shape shape;
  double objective = std::numeric_limits<double>::infinity();
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

LmOutcome levenberg_marquardt(const FitData& d, const Shape& start, int max_evals, double step_tol) {
  LmOutcome out;
  std::array<double, 3> x = to_coords(start);
  std::vector<double> r;
  out.shape = from_coords(x, start.mirrored);
  out.objective = project(d, out.shape, &r).objective;
  ++out.evaluations;
  if (!std::isfinite(out.objective)) return out;
  double mu = 1e-3;
  const std::size_t m = r.size();
  std::vector<double> rp;
  std::array<std::vector<double>, 3> J;
  while (out.evaluations < max_evals) {
    // Forward-difference Jacobian of the projected residual.
    bool ok = true;
    for (int j = 0; j < 3; ++j) {
      std::array<double, 3> xp = x;
      const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
      xp[j] += h;
      const double obj = project(d, from_coords(xp, start.mirrored), &rp).objective;
      ++out.evaluations;
      if (!std::isfinite(obj)) {
        xp[j] = x[j] - h;
        if (!std::isfinite(project(d, from_coords(xp, start.mirrored), &rp).objective)) {
          ok = false;
          break;
        }
        ++out.evaluations;
        J[j].resize(m);
        for (std::size_t i = 0; i < m; ++i) J[j][i] = (r[i] - rp[i]) / h;
        continue;
      }
      J[j].resize(m);
      for (std::size_t i = 0; i < m; ++i) J[j][i] = (rp[i] - r[i]) / h;
    }
    if (!ok) break;
    std::array<std::array<double, 3>, 3> A{};
    std::array<double, 3> g{};
    for (int a = 0; a < 3; ++a) {
      for (std::size_t i = 0; i < m; ++i) g[a] += J[a][i] * r[i];
      for (int b = 0; b <= a; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += J[a][i] * J[b][i];
        A[a][b] = A[b][a] = s;
      }
    }
    ++out.iterations;
    bool accepted = false;
    double step_norm = 0.0;
    while (!accepted && out.evaluations < max_evals) {
      // Solve (A + mu diag(A)) dx = -g by Gaussian elimination with pivoting.
      std::array<std::array<double, 4>, 3> M{};
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) M[a][b] = A[a][b];
        M[a][a] += mu * std::max(A[a][a], 1e-30);
        M[a][3] = -g[a];
      }
      for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
          if (std::abs(M[row][col]) > std::abs(M[piv][col])) piv = row;
        std::swap(M[col], M[piv]);
        if (M[col][col] == 0.0) M[col][col] = 1e-300;
        for (int row = col + 1; row < 3; ++row) {
          const double f = M[row][col] / M[col][col];
          for (int c = col; c < 4; ++c) M[row][c] -= f * M[col][c];
        }
      }
      std::array<double, 3> dx{};
      for (int row = 2; row >= 0; --row) {
        double s = M[row][3];
        for (int c = row + 1; c < 3; ++c) s -= M[row][c] * dx[c];
        dx[row] = s / M[row][row];
      }
      std::array<double, 3> xn = x;
      step_norm = 0.0;
      for (int a = 0; a < 3; ++a) {
        xn[a] += dx[a];
        step_norm = std::max(step_norm, std::abs(dx[a]) / std::max(1.0, std::abs(x[a])));
      }
      const Shape trial = from_coords(xn, start.mirrored);
      const double obj = project(d, trial, &rp).objective;
      ++out.evaluations;
      if (std::isfinite(obj) && obj < out.objective) {
        const double rel = (out.objective - obj) / std::max(out.objective, 1e-300);
        x = xn;
        r.swap(rp);
        out.objective = obj;
        out.shape = trial;
        mu = std::max(mu * 0.3, 1e-12);
        accepted = true;
        if (step_norm < step_tol || rel < 1e-12) {
          out.converged = true;
          return out;
        }
      } else {
        mu *= 4.0;
        if (mu > 1e12 || step_norm < step_tol) {
          out.converged = true;
          return out;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// First guess.

struct NormalizedSample {
  double kappa;  // sigma * kappa
  double theta;  // continuous tangent angle minus psi
  double w;
};

struct NormalizedProfile {
  std::vector<NormalizedSample> samples;  // ordered along the curve, endpoints included
  double sigma = 1.0;
  double psi = 0.0;
};

NormalizedProfile normalized_profile(const ParametricCurve& c, const LambdaFit& fit, const FitData& d) {
  NormalizedProfile prof;
  double lam = std::hypot(fit.lambda1, fit.lambda2);
  // Near-circular input has lambda ~ 0; cap the scale so k stays finite.
  const double floor = 1e-10 * fit.energy / std::max(d.length, 1e-300);
  lam = std::max(lam, floor);
  prof.sigma = 1.0 / std::sqrt(lam);
  prof.psi = (fit.lambda1 == 0.0 && fit.lambda2 == 0.0) ? 0.0 : std::atan2(fit.lambda2, fit.lambda1);
  std::vector<double> ts;
  ts.reserve(d.t.size() + 2);
  ts.push_back(c.t0);
  ts.insert(ts.end(), d.t.begin(), d.t.end());
  ts.push_back(c.t1);
  double prev = raw_angle(c, c.t0);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    const double a = raw_angle(c, t);
    prev = prev + wrap_pi(a - prev);
    const double w = (i == 0 || i + 1 == ts.size()) ? 0.0 : d.w[i - 1];
    prof.samples.push_back({prof.sigma * c.curvature(t), prev - prof.psi, w});
  }
  // Normalised angles near zero put the curve on the k < 1 branch; bring the mean close.
  double mean = 0.0;
  double W = 0.0;
  for (const auto& s : prof.samples) {
    mean += s.w * s.theta;
    W += s.w;
  }
  mean /= std::max(W, 1e-300);
  const double shift = kTwoPi * std::nearbyint(mean / kTwoPi);
  for (auto& s : prof.samples) s.theta -= shift;
  return prof;
}

/// Phase (s_start, s_end) of a normalised profile on xi_k.
Shape phases_for(const NormalizedProfile& prof, double k, bool mirrored) {
  Shape sh;
  sh.k = k;
  sh.mirrored = mirrored;
  const auto& S = prof.samples;
  auto phase = [&](const NormalizedSample& s) {
    const double kap = mirrored ? -s.kappa : s.kappa;
    const double th = mirrored ? -s.theta : s.theta;
    if (k < 1.0) return std::atan2(std::sin(0.5 * th) / k, kap / (2.0 * k));
    return 0.5 * th;
  };
  // Unwrap the phase along the samples.
  double first = phase(S.front());
  double prev = first;
  for (std::size_t i = 1; i < S.size(); ++i) prev = prev + wrap_pi(phase(S[i]) - prev);
  // k >= 1 phases are unwrapped already through theta.
  if (k >= 1.0) prev = phase(S.back());
  double last = prev;
  if (last <= first) last = first + 1e-6;
  if (k < 1.0) {
    sh.s0 = inverse_am(first, k);
    sh.s1 = inverse_am(last, k);
  } else {
    const double kk = k == 1.0 ? 1.0 : 1.0 / k;
    sh.s0 = inverse_am(first, kk) / k;
    sh.s1 = inverse_am(last, kk) / k;
  }
  if (!(sh.s1 > sh.s0)) sh.s1 = sh.s0 + 1e-6;
  return sh;
}

double mean_k_squared(const NormalizedProfile& prof) {
  double num = 0.0;
  double W = 0.0;
  for (const auto& s : prof.samples) {
    const double sh = std::sin(0.5 * s.theta);
    num += s.w * (0.25 * s.kappa * s.kappa + sh * sh);
    W += s.w;
  }
  return num / std::max(W, 1e-300);
}

bool mirrored_for(const NormalizedProfile& prof, double k) {
  if (k < 1.0) return false;
  double m = 0.0;
  for (const auto& s : prof.samples) m += s.w * s.kappa;
  return m < 0.0;
}

double nudge_from_one(double k) {
  if (std::abs(k - 1.0) < 1e-9) return k < 1.0 ? 1.0 - 1e-9 : 1.0 + 1e-9;
  return k;
}

ElasticaSegment chord_segment(const ParametricCurve& c) {
  ElasticaSegment seg;
  const Point2 start = c.position(c.t0);
  const Point2 chord = c.position(c.t1) - start;
  seg.k = 0.0;
  seg.s_start = 0.0;
  seg.s_end = 1.0;
  seg.placement.scale = chord.norm();
  seg.placement.rotation = chord.angle();
  seg.placement.translation = start;
  return seg;
}

struct GuessContext {
  LambdaFit fit;
  NormalizedProfile profile;
  Shape shape;
  ElasticaSegment segment;
};

GuessContext guess(const ParametricCurve& c, const FitData& d) {
  GuessContext g;
  g.fit = residual_of_parametric(c);
  if (g.fit.straight_line) {
    g.segment = chord_segment(c);
    g.shape = {0.0, 0.0, 1.0, false};
    return g;
  }
  g.profile = normalized_profile(c, g.fit, d);
  const double k = nudge_from_one(std::sqrt(std::max(mean_k_squared(g.profile), 1e-60)));
  g.shape = phases_for(g.profile, k, mirrored_for(g.profile, k));
  // Placement: rotation and scale from the lambda direction, translation matching the
  // start point.
  ElasticaSegment seg;
  seg.k = g.shape.k;
  seg.s_start = g.shape.s0;
  seg.s_end = g.shape.s1;
  seg.mirrored = g.shape.mirrored;
  seg.placement.scale = g.profile.sigma;
  seg.placement.rotation = g.profile.psi;
  seg.placement.translation = {0.0, 0.0};
  const Point2 start = segment_eval(seg, 0.0);
  seg.placement.translation = c.position(c.t0) - start;
  g.segment = seg;
  return g;
}

Shape shape_of(const ElasticaSegment& s) { return {s.k, s.s_start, s.s_end, s.mirrored}; }

}  // namespace

double l2_distance(const ParametricCurve& curve, const ElasticaSegment& seg) {
  const ArcLengthMap arc(curve);
  if (!(arc.total() > 0.0)) throw DegenerateError("l2_distance: zero-length curve");
  return std::sqrt(std::max(l2_squared(curve, seg, arc), 0.0));
}

double h1_distance(const ParametricCurve& curve, const ElasticaSegment& seg) {
  const ArcLengthMap arc(curve);
  const double L = arc.total();
  if (!(L > 0.0)) throw DegenerateError("h1_distance: zero-length curve");
  const CurveAngle ang(curve);
  // Align the two continuous angle branches at the start.
  const double offset =
      kTwoPi * std::nearbyint((ang.at(curve.t0) - segment_angle_continuous(seg, 0.0)) / kTwoPi);
  const double angle_term = integrate_over(curve, [&](double t) {
    const double diff = ang.at(t) - (segment_angle_continuous(seg, arc.at(t) / L) + offset);
    return diff * diff * curve.speed(t) / L;
  });
  return std::sqrt(std::max(l2_squared(curve, seg, arc), 0.0) + std::max(angle_term, 0.0));
}

ParametricCurve as_parametric(const ElasticaSegment& seg) {
  ParametricCurve c;
  const double length = seg.length();
  const double sign = seg.mirrored ? -1.0 : 1.0;
  c.position = [seg](double u) { return segment_eval(seg, u); };
  c.speed = [length](double) { return length; };
  c.curvature = [seg, sign](double u) {
    return sign * xi_curvature(seg.s_start + u * (seg.s_end - seg.s_start), seg.k) / seg.placement.scale;
  };
  c.tangent_angle = [seg](double u) { return segment_angle_continuous(seg, u); };
  return c;
}

double l2_distance(const CubicBezier& bezier, const ElasticaSegment& seg) {
  return l2_distance(as_parametric(bezier), seg);
}

double h1_distance(const CubicBezier& bezier, const ElasticaSegment& seg) {
  return h1_distance(as_parametric(bezier), seg);
}

ElasticaSegment first_guess(const ParametricCurve& curve) {
  const FitData d = make_fit_data(curve);
  if (!(d.length > 0.0)) throw DegenerateError("first_guess: zero-length curve");
  return guess(curve, d).segment;
}

ElasticaSegment first_guess(const CubicBezier& curve) { return first_guess(as_parametric(curve)); }

FitResult refine(const ParametricCurve& curve, const ElasticaSegment& init, const RefineOptions& options) {
  const FitData d = make_fit_data(curve);
  if (!(d.length > 0.0)) throw DegenerateError("refine: zero-length curve");
  FitResult res;
  res.first_guess = init;
  res.segment = init;
  res.first_guess_l2 = l2_distance(curve, init);
  res.l2 = res.first_guess_l2;

  const LambdaFit fit = residual_of_parametric(curve);
  if (fit.straight_line) {
    res.straight_line = true;
    const ElasticaSegment chord = chord_segment(curve);
    const double l2 = l2_distance(curve, chord);
    if (l2 <= res.l2) {
      res.segment = chord;
      res.l2 = l2;
    }
    res.h1 = h1_distance(curve, res.segment);
    return res;
  }

  Shape start = shape_of(init);
  if (start.k == 0.0) start.k = 1e-3;
  LmOutcome best;
  auto run = [&](const Shape& st) {
    const int budget = std::max(options.max_evaluations - res.evaluations, 0);
    if (budget == 0) return;
    LmOutcome o = levenberg_marquardt(d, st, budget, options.step_tolerance);
    res.evaluations += o.evaluations;
    res.iterations += o.iterations;
    if (o.objective < best.objective) best = o;
  };
  run(start);
  if (!(std::sqrt(best.objective) <= options.restart_above) && options.restarts > 0) {
    // Restarts: alternative k values with phases re-derived from the curve.
    const GuessContext g = guess(curve, d);
    const double k0 = g.shape.k > 0.0 ? g.shape.k : 1e-3;
    double kmax = 0.0;
    for (const auto& s : g.profile.samples) kmax = std::max(kmax, 0.5 * std::abs(s.kappa));
    const std::array<double, 5> ks{kmax, k0 * 0.6, k0 * 1.6, 1.0 / k0, k0};
    int used = 0;
    for (double k : ks) {
      if (used >= options.restarts) break;
      if (!(k > 0.0) || !std::isfinite(k)) continue;
      k = nudge_from_one(k);
      run(phases_for(g.profile, k, mirrored_for(g.profile, k)));
      ++used;
    }
  }
  res.converged = best.converged;
  if (std::isfinite(best.objective)) {
    const ElasticaSegment cand = to_segment(best.shape, project(d, best.shape));
    const double l2 = l2_distance(curve, cand);
    if (l2 <= res.l2) {
      res.segment = cand;
      res.l2 = l2;
    }
  }
  res.h1 = h1_distance(curve, res.segment);
  return res;
}

FitResult refine(const CubicBezier& curve, const ElasticaSegment& init, const RefineOptions& options) {
  return refine(as_parametric(curve), init, options);
}

FitResult fit_elastica(const ParametricCurve& curve, const RefineOptions& options) {
  return refine(curve, first_guess(curve), options);
}

FitResult fit_elastica(const CubicBezier& curve, const RefineOptions& options) {
  return fit_elastica(as_parametric(curve), options);
}

}  // namespace elb
