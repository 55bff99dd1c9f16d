#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace elb::quad {

/// Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, computed once per n and cached.
const Rule& gauss_legendre(int n);

inline constexpr int kDefaultNodes = 32;
inline constexpr double kDefaultTol = 1e-10;

struct Panel {
  double a = 0.0;
  double b = 0.0;
};

inline constexpr int kMaxPanels = 4096;

/// Splits [a, b] until the summed disagreement between a 32-node rule on each panel and the
/// sum over its two halves is below tol, relative to the one-panel estimate over [a, b],
/// but never tighter than abs_tol. Stops early at max_panels. The resulting panel set is
/// reused for every integrand that shares the proxy's difficulty. Panels come out sorted.
std::vector<Panel> adaptive_panels(const std::function<double(double)>& f, double a, double b,
                                   double tol = kDefaultTol, int max_depth = 24,
                                   double abs_tol = 1e-300, int max_panels = kMaxPanels);

/// Flattened nodes and weights over a panel set.
struct NodeSet {
  std::vector<double> t;
  std::vector<double> w;
};

NodeSet nodes_on(std::span<const Panel> panels, int n = kDefaultNodes);

/// Uniform composite rule: `panels` equal panels with n nodes each.
NodeSet composite(double a, double b, int panels, int n);

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = kDefaultTol, double abs_tol = 1e-300);

}  // namespace elb::quad
