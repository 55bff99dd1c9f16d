#include "elb/residual.hpp"

#include <algorithm>
#include <array>
#include <vector>

#include "elb/quadrature.hpp"

namespace elb {

QualityClass classify(double e) {
  if (e <= kBestMax) return QualityClass::Best;
  if (e <= kGoodMax) return QualityClass::Good;
  if (e <= kBorderlineMax) return QualityClass::Borderline;
  return QualityClass::Reject;
}

std::string_view to_string(QualityClass q) {
  switch (q) {
    case QualityClass::Best: return "Best";
    case QualityClass::Good: return "Good";
    case QualityClass::Borderline: return "Borderline";
    case QualityClass::Reject: return "Reject";
  }
  return "Reject";
}

namespace {

/// Solves the symmetric positive semidefinite 3x3 system G c = b by Cholesky; adds a
/// ridge of 1e-12 * trace when a pivot collapses.
std::array<double, 3> solve_spd3(std::array<std::array<double, 3>, 3> G, std::array<double, 3> b) {
  const double trace = G[0][0] + G[1][1] + G[2][2];
  auto try_cholesky = [](const std::array<std::array<double, 3>, 3>& A, double floor,
                         std::array<std::array<double, 3>, 3>& L) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j <= i; ++j) {
        double s = A[i][j];
        for (int p = 0; p < j; ++p) s -= L[i][p] * L[j][p];
        if (i == j) {
          if (!(s > floor)) return false;
          L[i][i] = std::sqrt(s);
        } else {
          L[i][j] = s / L[j][j];
        }
      }
    }
    return true;
  };
  std::array<std::array<double, 3>, 3> L{};
  if (!try_cholesky(G, 1e-14 * trace, L)) {
    const double ridge = 1e-12 * std::max(trace, 1e-300);
    for (int i = 0; i < 3; ++i) G[i][i] += ridge;
    L = {};
    if (!try_cholesky(G, 0.0, L)) return {0.0, 0.0, 0.0};
  }
  std::array<double, 3> y{};
  for (int i = 0; i < 3; ++i) {
    double s = b[i];
    for (int p = 0; p < i; ++p) s -= L[i][p] * y[p];
    y[i] = s / L[i][i];
  }
  std::array<double, 3> c{};
  for (int i = 2; i >= 0; --i) {
    double s = y[i];
    for (int p = i + 1; p < 3; ++p) s -= L[p][i] * c[p];
    c[i] = s / L[i][i];
  }
  return c;
}

struct Sample {
  double x, y, kappa, w;
};

LambdaFit fit_samples(const std::vector<Sample>& pts) {
  LambdaFit fit;
  double W = 0.0;
  double mx = 0.0;
  double my = 0.0;
  double energy = 0.0;
  for (const Sample& s : pts) {
    W += s.w;
    mx += s.w * s.x;
    my += s.w * s.y;
    energy += s.w * s.kappa * s.kappa;
  }
  fit.energy = energy;
  if (!(W > 0.0)) {
    fit.straight_line = true;
    return fit;
  }
  mx /= W;
  my /= W;
  // Dimensionless test: length * energy is scale invariant.
  if (!(energy * W >= 1e-14)) {
    fit.straight_line = true;
    fit.e_lambda = 0.0;
    return fit;
  }
  std::array<std::array<double, 3>, 3> G{};
  std::array<double, 3> b{};
  for (const Sample& s : pts) {
    const std::array<double, 3> g{-(s.y - my), s.x - mx, 1.0};
    for (int i = 0; i < 3; ++i) {
      b[i] += s.w * g[i] * s.kappa;
      for (int j = 0; j <= i; ++j) G[i][j] += s.w * g[i] * g[j];
    }
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) G[i][j] = G[j][i];
  const auto c = solve_spd3(G, b);
  double res = 0.0;
  for (const Sample& s : pts) {
    const double r = s.kappa + c[0] * (s.y - my) - c[1] * (s.x - mx) - c[2];
    res += s.w * r * r;
  }
  fit.lambda1 = c[0];
  fit.lambda2 = c[1];
  fit.alpha = c[2] + c[0] * my - c[1] * mx;
  fit.e_lambda = std::clamp(std::sqrt(res / energy), 0.0, 1.0);
  return fit;
}

LambdaFit fit_on_nodes(const ParametricCurve& c, const quad::NodeSet& ns) {
  std::vector<Sample> pts;
  pts.reserve(ns.t.size());
  for (std::size_t i = 0; i < ns.t.size(); ++i) {
    const Point2 p = c.position(ns.t[i]);
    pts.push_back({p.x, p.y, c.curvature(ns.t[i]), ns.w[i] * c.speed(ns.t[i])});
  }
  return fit_samples(pts);
}

}  // namespace

LambdaFit residual_of_parametric(const ParametricCurve& c) {
  // Panels are driven by a dimensionless proxy for the hardest integrand, kappa^2 ds.
  const double ell = std::max(quad::integrate(c.speed, c.t0, c.t1, 1e-10), 1e-300);
  auto proxy = [&](double t) {
    const double k = c.curvature(t) * ell;
    return c.speed(t) / ell * (1.0 + k * k);
  };
  const auto panels = quad::adaptive_panels(proxy, c.t0, c.t1, quad::kDefaultTol);
  return fit_on_nodes(c, quad::nodes_on(panels));
}

LambdaFit lambda_fit(const CubicBezier& curve) {
  // Panel proxy uses the control-polygon length instead of the true length.
  double ell = 0.0;
  for (int i = 0; i < 3; ++i) ell += (curve.p[i + 1] - curve.p[i]).norm();
  ell = std::max(ell, 1e-300);
  auto proxy = [&](double t) {
    const Point2 d = curve.d1(t);
    const double sp = d.norm();
    const double k = curve.curvature_or_zero(t) * ell;
    return sp / ell * (1.0 + k * k);
  };
  const auto panels = quad::adaptive_panels(proxy, 0.0, 1.0, quad::kDefaultTol);
  const quad::NodeSet ns = quad::nodes_on(panels);
  std::vector<Sample> pts;
  pts.reserve(ns.t.size());
  for (std::size_t i = 0; i < ns.t.size(); ++i) {
    const double t = ns.t[i];
    const Point2 p = curve.eval(t);
    const Point2 d = curve.d1(t);
    pts.push_back({p.x, p.y, curve.curvature_or_zero(t), ns.w[i] * d.norm()});
  }
  return fit_samples(pts);
}

ParametricCurve as_parametric(const CubicBezier& curve) {
  ParametricCurve pc;
  pc.position = [curve](double t) { return curve.eval(t); };
  pc.curvature = [curve](double t) { return curve.curvature_or_zero(t); };
  pc.speed = [curve](double t) { return curve.d1(t).norm(); };
  pc.tangent_angle = [curve](double t) { return curve.d1(t).angle(); };
  return pc;
}

double e_lambda(const CubicBezier& curve) { return lambda_fit(curve).e_lambda; }

double bending_energy(const CubicBezier& curve) {
  return lambda_fit(curve).energy;
}

}  // namespace elb
