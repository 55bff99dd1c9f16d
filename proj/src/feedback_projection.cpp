#include "elb/feedback_projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "elb/residual.hpp"

namespace elb {

void FeedbackConfig::validate() const {
  if (!(threshold_E >= 0.0 && threshold_E < 1.0)) throw std::invalid_argument("threshold_E must lie in [0, 1)");
  if (t_grid < 2) throw std::invalid_argument("t_grid must be at least 2");
  if (passes < 1) throw std::invalid_argument("passes must be at least 1");
  if (!(L_min_inflectional > 0.0)) throw std::invalid_argument("L_min_inflectional must be positive");
}

std::string_view to_string(CurveClass c) {
  return c == CurveClass::Inflectional ? "inflectional" : "non_inflectional";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Threshold: return "threshold";
    case Termination::SweepEnd: return "sweep_end";
    case Termination::BecameNonInflectional: return "became_noninflectional";
  }
  return "sweep_end";
}

double terminal_length_f(double t1, double t2) {
  return 0.00001475 * std::exp(10.39 * t1 - 10.48 * t2) + 0.4574 * t1 * std::exp(1.711 * t1 - 2.535 * t2) +
         2.772 * t2 * std::exp(-0.08504 * t1 - 0.9109 * t2) - 0.2957 * t1 * t2 * std::exp(-0.6606 * t1);
}

std::pair<double, double> terminal_lengths(double theta1, double theta2) {
  // First leg on the theta1 >= 0 branch; the x-axis reflection negates both angles.
  auto first_leg = [](double a, double b) {
    if (a < 0.0) {
      a = -a;
      b = wrap_pi(-b);
    }
    const double f = terminal_length_f(a, b);
    if (!(f < kTerminalLengthGuard)) return kTerminalLengthGuard;
    return std::max(kTerminalLengthMin, f);
  };
  // The reflection x -> 1 - x swaps the ends: (theta1, theta2) -> (pi - theta2, pi - theta1).
  return {first_leg(theta1, theta2), first_leg(wrap_pi(kPi - theta2), wrap_pi(kPi - theta1))};
}

namespace {

struct Legs {
  Point2 dir1;
  Point2 dir2;
  CubicBezier base;

  CubicBezier at(double L1, double L2) const { return set_edge_lengths(base, dir1, dir2, L1, L2); }
};

struct Candidate {
  double L1 = 0.0;
  double L2 = 0.0;
  double e = 1.0;
  bool original = false;
};

struct PassOutcome {
  Candidate best;
  bool threshold = false;
  bool switched = false;
  CurveClass cls = CurveClass::NonInflectional;
};

class PassRunner {
 public:
  PassRunner(const Legs& legs, const FeedbackConfig& cfg, int pass, std::vector<TracePoint>& trace)
      : legs_(legs), cfg_(cfg), pass_(pass), trace_(trace) {}

  PassOutcome run(const Candidate& start) {
    out_.best = start;
    if (start.e <= cfg_.threshold_E) {
      out_.threshold = true;
      return out_;
    }
    const CubicBezier untangled = remove_self_intersection(legs_.at(start.L1, start.L2));
    const double u1 = (untangled.p[1] - untangled.p[0]).norm();
    const double u2 = (untangled.p[2] - untangled.p[3]).norm();
    const PolygonGeometry g = polygon_geometry(untangled);
    const EdgeLengthBounds b = edge_length_bounds(g.theta1, g.theta2);
    const double lo = cfg_.L_min_inflectional;
    const double c1 = std::clamp(u1, lo, std::max(lo, b.L_max));
    const double c2 = std::clamp(u2, lo, std::max(lo, b.L_max));
    if (polygon_geometry(legs_.at(c1, c2)).inflectional) {
      out_.cls = CurveClass::Inflectional;
      double s1 = 0.0;
      double s2 = 0.0;
      if (sweep(c1, c2, lo, lo, true, s1, s2)) return out_;
      if (!out_.switched) return out_;
      sweep_noninflectional(s1, s2, g);
      return out_;
    }
    out_.cls = CurveClass::NonInflectional;
    sweep_noninflectional(u1, u2, g);
    return out_;
  }

 private:
  void sweep_noninflectional(double a1, double a2, const PolygonGeometry& g) {
    const auto [T1, T2] = terminal_lengths(g.theta1, g.theta2);
    double s1 = 0.0;
    double s2 = 0.0;
    sweep(a1, a2, T1, T2, false, s1, s2);
  }

  /// Evaluates the t grid from (a1, a2) to (b1, b2). Returns true when the threshold was
  /// met. With watch_inflection, stops at the first grid point whose polygon is no longer
  /// inflectional and reports its lengths in (s1, s2).
  bool sweep(double a1, double a2, double b1, double b2, bool watch_inflection, double& s1, double& s2) {
    const int n = cfg_.t_grid;
    for (int i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / (n - 1);
      const double L1 = (1.0 - t) * a1 + t * b1;
      const double L2 = (1.0 - t) * a2 + t * b2;
      const CubicBezier c = legs_.at(L1, L2);
      if (watch_inflection && !polygon_geometry(c).inflectional) {
        out_.switched = true;
        s1 = L1;
        s2 = L2;
        return false;
      }
      const double e = e_lambda(c);
      trace_.push_back({pass_, t, e, L1, L2, watch_inflection});
      if (e < out_.best.e) out_.best = {L1, L2, e, false};
      if (e <= cfg_.threshold_E) {
        out_.best = {L1, L2, e, false};
        out_.threshold = true;
        return true;
      }
    }
    return false;
  }

  const Legs& legs_;
  const FeedbackConfig& cfg_;
  int pass_;
  std::vector<TracePoint>& trace_;
  PassOutcome out_;
};

Legs legs_of(const CubicBezier& standard) {
  const Point2 d1 = standard.p[1] - standard.p[0];
  const Point2 d2 = standard.p[2] - standard.p[3];
  if (!(d1.norm() > 0.0) || !(d2.norm() > 0.0)) {
    throw DegenerateError("outer control edge of zero length: end tangent undefined");
  }
  return {d1 / d1.norm(), d2 / d2.norm(), standard};
}

}  // namespace

ProjectionReport feedback_project(const CubicBezier& curve, const FeedbackConfig& config) {
  config.validate();
  const StandardForm sf = standard_position(curve);
  const Legs legs = legs_of(sf.curve);
  const PolygonGeometry g0 = polygon_geometry(sf.curve);

  ProjectionReport rep;
  rep.out_of_warranty = !angle_constraints(g0, AngleProfile::RelaxedSixth);
  rep.input_e_lambda = e_lambda(curve);
  rep.classification = g0.inflectional ? CurveClass::Inflectional : CurveClass::NonInflectional;

  Candidate current{g0.L1, g0.L2, rep.input_e_lambda, true};
  rep.trace.push_back({0, 0.0, current.e, current.L1, current.L2, false});
  bool switched = false;
  bool threshold = false;
  for (int pass = 1; pass <= config.passes && !threshold; ++pass) {
    PassRunner runner(legs, config, pass, rep.trace);
    const PassOutcome o = runner.run(current);
    if (pass == 1) rep.classification = o.cls;
    switched = switched || o.switched;
    threshold = o.threshold;
    if (o.best.e < current.e || o.threshold) current = o.best;
  }

  if (current.original) {
    rep.output = curve;
    rep.e_lambda = rep.input_e_lambda;
  } else {
    rep.output = with_standard_edge_lengths(curve, current.L1, current.L2);
    rep.e_lambda = e_lambda(rep.output);
  }
  rep.terminated_by = threshold ? Termination::Threshold
                      : switched ? Termination::BecameNonInflectional
                                 : Termination::SweepEnd;
  return rep;
}

GradientTrace gradient_project(const CubicBezier& curve, GradientEnergy energy, int steps) {
  const StandardForm sf = standard_position(curve);
  const Legs legs = legs_of(sf.curve);
  auto E = [&](double L1, double L2) {
    const CubicBezier c = legs.at(L1, L2);
    return energy == GradientEnergy::Bending ? bending_energy(c) : e_lambda(c);
  };
  constexpr double kMinLength = 1e-3;
  const PolygonGeometry g0 = polygon_geometry(sf.curve);
  double L1 = g0.L1;
  double L2 = g0.L2;
  double f = E(L1, L2);
  GradientTrace tr;
  tr.steps.push_back({L1, L2, f});
  double alpha = 1.0;
  for (int it = 0; it < steps; ++it) {
    const double h1 = 1e-6 * std::max(1.0, L1);
    const double h2 = 1e-6 * std::max(1.0, L2);
    const double g1 = (E(L1 + h1, L2) - E(std::max(L1 - h1, 0.0), L2)) / (L1 + h1 - std::max(L1 - h1, 0.0));
    const double g2 = (E(L1, L2 + h2) - E(L1, std::max(L2 - h2, 0.0))) / (L2 + h2 - std::max(L2 - h2, 0.0));
    const double gg = g1 * g1 + g2 * g2;
    if (!(gg > 0.0) || !std::isfinite(gg)) break;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      const double n1 = std::max(L1 - alpha * g1, kMinLength);
      const double n2 = std::max(L2 - alpha * g2, kMinLength);
      const double fn = E(n1, n2);
      const double decrease = g1 * (L1 - n1) + g2 * (L2 - n2);
      if (std::isfinite(fn) && fn < f - 1e-4 * decrease && (n1 != L1 || n2 != L2)) {
        L1 = n1;
        L2 = n2;
        f = fn;
        accepted = true;
        alpha *= 2.0;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    tr.steps.push_back({L1, L2, f});
  }
  tr.output = tr.steps.size() == 1 ? curve : with_standard_edge_lengths(curve, L1, L2);
  return tr;
}

}  // namespace elb
