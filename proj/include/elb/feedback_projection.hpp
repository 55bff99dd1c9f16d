#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "elb/geom.hpp"
#include "elb/zone.hpp"

namespace elb {

struct FeedbackConfig {
  double threshold_E = 0.0;
  /// Shortest outer edge allowed for inflectional curves.
  double L_min_inflectional = 0.27;
  int t_grid = 11;
  int passes = 2;

  /// Throws std::invalid_argument unless E in [0, 1), t_grid >= 2 and passes >= 1.
  void validate() const;
};

enum class CurveClass { Inflectional, NonInflectional };
enum class Termination { Threshold, SweepEnd, BecameNonInflectional };

std::string_view to_string(CurveClass c);
std::string_view to_string(Termination t);

struct TracePoint {
  int pass = 0;
  double t = 0.0;
  double e_lambda = 0.0;
  double L1 = 0.0;  // standard-position outer edge lengths
  double L2 = 0.0;
  bool inflectional_branch = false;
};

struct ProjectionReport {
  CubicBezier output;
  double e_lambda = 0.0;
  double input_e_lambda = 0.0;
  CurveClass classification = CurveClass::NonInflectional;
  Termination terminated_by = Termination::SweepEnd;
  std::vector<TracePoint> trace;
  /// Input fails even the widest angle-constraint profile; the result carries no
  /// quality expectation.
  bool out_of_warranty = false;
};

/// Raw fitted terminal-length function, intended for theta1 >= 0.
double terminal_length_f(double theta1, double theta2);

inline constexpr double kTerminalLengthMin = 0.02;
/// Numerical guard only: f grows exponentially for strongly asymmetric angles.
inline constexpr double kTerminalLengthGuard = 1e3;

/// Terminal outer-edge lengths for the non-inflectional sweep, from the end-tangent angles
/// of a standard-position polygon (theta2 is the direction of p2 - p3):
/// max(kTerminalLengthMin, f) on the theta1 >= 0 branch, with the other cases and the
/// second leg obtained by reflection.
std::pair<double, double> terminal_lengths(double theta1, double theta2);

/// Residual-guided projection; keeps endpoints and end-tangent directions exactly.
ProjectionReport feedback_project(const CubicBezier& curve, const FeedbackConfig& config = {});

enum class GradientEnergy { Bending, LambdaResidual };

struct GradientStep {
  double L1 = 0.0;
  double L2 = 0.0;
  double energy = 0.0;
};

struct GradientTrace {
  CubicBezier output;
  std::vector<GradientStep> steps;  // steps[0] is the input
};

/// Projected gradient descent on the standard-position outer edge lengths with fixed end
/// tangents. Diagnostic: with bending energy the curve keeps growing.
GradientTrace gradient_project(const CubicBezier& curve, GradientEnergy energy, int steps);

}  // namespace elb
