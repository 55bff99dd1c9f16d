#include "elb/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <numbers>

namespace elb::quad {
namespace {

Rule build_rule(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged root
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

double apply_rule(const Rule& r, const std::function<double(double)>& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double m = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(m + h * r.nodes[i]);
  return s * h;
}

struct Node {
  double a = 0.0;
  double b = 0.0;
  double left = 0.0;
  double right = 0.0;
  double err = 0.0;
  int depth = 0;
};

Node make_node(const Rule& r, const std::function<double(double)>& f, double a, double b, double whole,
               int depth) {
  const double m = 0.5 * (a + b);
  Node n{a, b, apply_rule(r, f, a, m), apply_rule(r, f, m, b), 0.0, depth};
  n.err = std::abs(n.left + n.right - whole);
  if (!std::isfinite(n.err)) n.err = 0.0;
  return n;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n == kDefaultNodes) {
    static const Rule r32 = build_rule(kDefaultNodes);
    return r32;
  }
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

std::vector<Panel> adaptive_panels(const std::function<double(double)>& f, double a, double b,
                                   double tol, int max_depth, double abs_tol, int max_panels) {
  const Rule& r = gauss_legendre(kDefaultNodes);
  const double whole = apply_rule(r, f, a, b);
  const double target = std::max(tol * std::abs(whole), abs_tol);
  auto by_err = [](const Node& x, const Node& y) { return x.err < y.err; };
  std::priority_queue<Node, std::vector<Node>, decltype(by_err)> open(by_err);
  std::vector<Panel> out;
  Node root = make_node(r, f, a, b, whole, 0);
  double total = root.err;
  open.push(root);
  // Global refinement: always split the worst panel. Noisy integrands then exhaust the
  // panel budget instead of bisecting everywhere to max_depth.
  while (!open.empty() && total > target && static_cast<int>(open.size() + out.size()) < max_panels) {
    const Node n = open.top();
    open.pop();
    total -= n.err;
    // The local relative floor stops refinement that would only chase roundoff.
    if (n.depth >= max_depth || n.err <= 1e-13 * std::abs(n.left + n.right)) {
      out.push_back({n.a, n.b});
      continue;
    }
    const double m = 0.5 * (n.a + n.b);
    const Node lo = make_node(r, f, n.a, m, n.left, n.depth + 1);
    const Node hi = make_node(r, f, m, n.b, n.right, n.depth + 1);
    total += lo.err + hi.err;
    open.push(lo);
    open.push(hi);
  }
  for (; !open.empty(); open.pop()) out.push_back({open.top().a, open.top().b});
  std::sort(out.begin(), out.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  return out;
}

NodeSet nodes_on(std::span<const Panel> panels, int n) {
  const Rule& r = gauss_legendre(n);
  NodeSet ns;
  ns.t.reserve(panels.size() * n);
  ns.w.reserve(panels.size() * n);
  for (const Panel& p : panels) {
    const double h = 0.5 * (p.b - p.a);
    const double m = 0.5 * (p.a + p.b);
    for (int i = 0; i < n; ++i) {
      ns.t.push_back(m + h * r.nodes[i]);
      ns.w.push_back(h * r.weights[i]);
    }
  }
  return ns;
}

NodeSet composite(double a, double b, int panels, int n) {
  std::vector<Panel> ps;
  ps.reserve(panels);
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) ps.push_back({a + i * h, i + 1 == panels ? b : a + (i + 1) * h});
  return nodes_on(ps, n);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol, double abs_tol) {
  if (a == b) return 0.0;
  const auto panels = adaptive_panels(f, a, b, tol, 24, abs_tol);
  const NodeSet ns = nodes_on(panels);
  double s = 0.0;
  for (std::size_t i = 0; i < ns.t.size(); ++i) s += ns.w[i] * f(ns.t[i]);
  return s;
}

}  // namespace elb::quad
