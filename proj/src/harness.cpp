#include "elb/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "elb/elastica_fit.hpp"
#include "elb/residual.hpp"
#include "elb/zone.hpp"

namespace elb::harness {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  return splitmix64(splitmix64(seed_) ^ splitmix64(counter ^ 0x6a09e667f3bcc909ULL));
}

double CounterRng::uniform(std::uint64_t counter) const {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::InnerPointsUnitBox: return "inner_points_unit_box";
    case Generator::RandomQuadUnitDisc: return "random_quad_unit_disc";
    case Generator::ZoneInterior: return "zone_interior";
  }
  return "random_quad_unit_disc";
}

std::string_view to_string(ConstraintProfile p) {
  switch (p) {
    case ConstraintProfile::None: return "none";
    case ConstraintProfile::Strict: return "strict";
    case ConstraintProfile::RelaxedQuarter: return "relaxed_quarter";
    case ConstraintProfile::RelaxedSixth: return "relaxed_sixth";
  }
  return "none";
}

Generator parse_generator(std::string_view name) {
  for (Generator g : {Generator::InnerPointsUnitBox, Generator::RandomQuadUnitDisc, Generator::ZoneInterior})
    if (to_string(g) == name) return g;
  throw std::invalid_argument("unknown generator: " + std::string(name));
}

ConstraintProfile parse_constraint_profile(std::string_view name) {
  for (ConstraintProfile p : {ConstraintProfile::None, ConstraintProfile::Strict, ConstraintProfile::RelaxedQuarter,
                              ConstraintProfile::RelaxedSixth})
    if (to_string(p) == name) return p;
  throw std::invalid_argument("unknown constraint profile: " + std::string(name));
}

int configured_threads() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("ELB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = static_cast<int>(std::min<long>(v, n));
  }
  return std::max(n, 1);
}

namespace {

// Draws per candidate; each candidate owns a disjoint block of counters.
constexpr std::uint64_t kDraws = 8;

// Zone-interior proposal box in standard position. Outer edges longer than this never
// pass the edge-length bounds.
constexpr double kZoneLengthLo = 0.27;
constexpr double kZoneLengthHi = 3.3;

Point2 disc_point(const CounterRng& rng, std::uint64_t c) {
  const double r = std::sqrt(rng.uniform(c));
  const double a = kTwoPi * rng.uniform(c + 1);
  return {r * std::cos(a), r * std::sin(a)};
}

std::optional<AngleProfile> angle_profile(ConstraintProfile p) {
  switch (p) {
    case ConstraintProfile::None: return std::nullopt;
    case ConstraintProfile::Strict: return AngleProfile::Strict;
    case ConstraintProfile::RelaxedQuarter: return AngleProfile::RelaxedQuarter;
    case ConstraintProfile::RelaxedSixth: return AngleProfile::RelaxedSixth;
  }
  return std::nullopt;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
void for_each_index(std::size_t n, Execution mode, F&& body) {
  if (mode == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const long long m = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(configured_threads())
  for (long long i = 0; i < m; ++i) body(static_cast<std::size_t>(i));
}

std::vector<double> column(const std::vector<Row>& rows, std::optional<double> Row::*field) {
  std::vector<double> v;
  for (const Row& r : rows)
    if (r.error.empty() && (r.*field)) v.push_back(*(r.*field));
  return v;
}

std::vector<double> e_column(const std::vector<Row>& rows) {
  std::vector<double> v;
  for (const Row& r : rows)
    if (r.error.empty()) v.push_back(r.e_lambda);
  return v;
}

}  // namespace

CubicBezier candidate(Generator g, const CounterRng& rng, std::uint64_t index) {
  const std::uint64_t c = index * kDraws;
  switch (g) {
    case Generator::InnerPointsUnitBox:
      return {{0.0, 0.0},
              {rng.uniform(c, -0.5, 1.5), rng.uniform(c + 1, -1.0, 1.0)},
              {rng.uniform(c + 2, -0.5, 1.5), rng.uniform(c + 3, -1.0, 1.0)},
              {1.0, 0.0}};
    case Generator::RandomQuadUnitDisc:
      return {disc_point(rng, c), disc_point(rng, c + 2), disc_point(rng, c + 4), disc_point(rng, c + 6)};
    case Generator::ZoneInterior: {
      // End-tangent directions uniform over the strict angle range, edge lengths uniform.
      const double t1 = rng.uniform(c, -2.0 * kPi / 3.0, 2.0 * kPi / 3.0);
      const double u = rng.uniform(c + 1, 0.0, 4.0 * kPi / 3.0);
      const double t2 = u < 2.0 * kPi / 3.0 ? kPi / 3.0 + u : u - 2.0 * kPi / 3.0 - kPi;
      const double L1 = rng.uniform(c + 2, kZoneLengthLo, kZoneLengthHi);
      const double L2 = rng.uniform(c + 3, kZoneLengthLo, kZoneLengthHi);
      return {{0.0, 0.0},
              {L1 * std::cos(t1), L1 * std::sin(t1)},
              {1.0 + L2 * std::cos(t2), L2 * std::sin(t2)},
              {1.0, 0.0}};
    }
  }
  return {};
}

bool accepted(Generator g, ConstraintProfile p, const CubicBezier& c) {
  if (!((c.p[3] - c.p[0]).norm() > 1e-12)) return false;
  const PolygonGeometry geom = polygon_geometry(standard_position(c).curve);
  if (g == Generator::ZoneInterior) {
    if (!angle_constraints(geom, AngleProfile::Strict) || !zone_contains(geom)) return false;
  }
  const auto ap = angle_profile(p);
  return !ap || angle_constraints(geom, *ap);
}

Sample sample_curves(const SampleSpec& spec, Execution mode) {
  const CounterRng rng(spec.seed);
  Sample out;
  out.curves.reserve(spec.count);
  if (mode == Execution::Serial) {
    while (out.curves.size() < spec.count) {
      const CubicBezier c = candidate(spec.generator, rng, out.candidates++);
      if (accepted(spec.generator, spec.constraint_profile, c)) out.curves.push_back(c);
    }
    return out;
  }
  // Blocks of candidates are screened in parallel and merged in index order.
  const std::size_t block = 1 << 14;
  std::vector<char> ok(block);
  while (out.curves.size() < spec.count) {
    const std::uint64_t base = out.candidates;
    for_each_index(block, Execution::Parallel, [&](std::size_t i) {
      ok[i] = accepted(spec.generator, spec.constraint_profile, candidate(spec.generator, rng, base + i));
    });
    for (std::size_t i = 0; i < block && out.curves.size() < spec.count; ++i) {
      ++out.candidates;
      if (ok[i]) out.curves.push_back(candidate(spec.generator, rng, base + i));
    }
  }
  return out;
}

Stats stats_of(std::vector<double> v) {
  std::erase_if(v, [](double x) { return std::isnan(x); });
  Stats s;
  if (v.empty()) {
    s.mean = s.median = s.p99 = s.max = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  s.median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  const auto rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(n)));
  s.p99 = v[std::max<std::size_t>(rank, 1) - 1];
  s.max = v.back();
  return s;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j);
    for (std::size_t q = i; q <= j; ++q) r[idx[q]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("spearman: length mismatch");
  if (a.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double m = 0.5 * static_cast<double>(a.size() - 1);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (ra[i] - m) * (rb[i] - m);
    saa += (ra[i] - m) * (ra[i] - m);
    sbb += (rb[i] - m) * (rb[i] - m);
  }
  return sab / std::sqrt(saa * sbb);
}

double end_data_error(const CubicBezier& in, const CubicBezier& out) {
  const double dp = std::max((in.p[0] - out.p[0]).norm(), (in.p[3] - out.p[3]).norm());
  const double a1 = std::abs(wrap_pi((out.p[1] - out.p[0]).angle() - (in.p[1] - in.p[0]).angle()));
  const double a2 = std::abs(wrap_pi((out.p[2] - out.p[3]).angle() - (in.p[2] - in.p[3]).angle()));
  return std::max({dp, a1, a2});
}

ExperimentResult correlation_rows(const std::vector<CubicBezier>& curves, Execution mode) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.rows.resize(curves.size());
  for_each_index(curves.size(), mode, [&](std::size_t i) {
    Row& r = res.rows[i];
    r.curve_id = i;
    try {
      const LambdaFit lf = lambda_fit(curves[i]);
      r.e_lambda = lf.e_lambda;
      r.classification = std::string(to_string(classify(lf.e_lambda)));
      const FitResult fit = fit_elastica(curves[i]);
      r.l2 = fit.l2;
      r.h1 = fit.h1;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });
  ExperimentSummary& s = res.summary;
  s.experiment = "correlation";
  s.e_lambda = stats_of(e_column(res.rows));
  std::vector<double> e, l2;
  for (const Row& r : res.rows) {
    if (!r.error.empty()) {
      ++s.failures;
      continue;
    }
    e.push_back(r.e_lambda);
    l2.push_back(*r.l2);
  }
  s.n = e.size();
  s.l2 = stats_of(column(res.rows, &Row::l2));
  s.h1 = stats_of(column(res.rows, &Row::h1));
  if (e.size() >= 2) s.spearman_e_lambda_l2 = spearman(e, l2);
  s.runtime_seconds = seconds_since(t0);
  return res;
}

ExperimentResult run_correlation_experiment(const SampleSpec& spec, Execution mode) {
  const auto t0 = std::chrono::steady_clock::now();
  const Sample sample = sample_curves(spec, mode);
  ExperimentResult res = correlation_rows(sample.curves, mode);
  res.summary.spec = spec;
  res.summary.acceptance = sample.acceptance();
  res.summary.runtime_seconds = seconds_since(t0);
  return res;
}

ExperimentResult run_projection_experiment(const SampleSpec& spec, const FeedbackConfig& config, Execution mode) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const Sample sample = sample_curves(spec, mode);
  ExperimentResult res;
  res.rows.resize(sample.curves.size());
  std::vector<double> end_err(sample.curves.size(), 0.0);
  for_each_index(sample.curves.size(), mode, [&](std::size_t i) {
    Row& r = res.rows[i];
    r.curve_id = i;
    try {
      const ProjectionReport rep = feedback_project(sample.curves[i], config);
      r.e_lambda = rep.e_lambda;
      r.classification = std::string(to_string(rep.classification));
      end_err[i] = end_data_error(sample.curves[i], rep.output);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });
  ExperimentSummary& s = res.summary;
  s.experiment = "projection";
  s.spec = spec;
  s.feedback = config;
  s.e_lambda = stats_of(e_column(res.rows));
  s.failures = static_cast<std::size_t>(std::count_if(res.rows.begin(), res.rows.end(),
                                                      [](const Row& r) { return !r.error.empty(); }));
  s.n = res.rows.size() - s.failures;
  s.end_data_error = end_err.empty() ? 0.0 : *std::max_element(end_err.begin(), end_err.end());
  s.acceptance = sample.acceptance();
  s.runtime_seconds = seconds_since(t0);
  return res;
}

ExperimentResult run_zone_sweep(std::size_t n, std::uint64_t seed, Execution mode) {
  const auto t0 = std::chrono::steady_clock::now();
  const SampleSpec spec{n, Generator::ZoneInterior, seed, ConstraintProfile::None};
  const Sample sample = sample_curves(spec, mode);
  ExperimentResult res;
  res.rows.resize(sample.curves.size());
  for_each_index(sample.curves.size(), mode, [&](std::size_t i) {
    Row& r = res.rows[i];
    r.curve_id = i;
    try {
      r.e_lambda = e_lambda(sample.curves[i]);
      r.classification = std::string(to_string(classify(r.e_lambda)));
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });
  ExperimentSummary& s = res.summary;
  s.experiment = "zone_sweep";
  s.spec = spec;
  s.e_lambda = stats_of(e_column(res.rows));
  s.failures = static_cast<std::size_t>(std::count_if(res.rows.begin(), res.rows.end(),
                                                      [](const Row& r) { return !r.error.empty(); }));
  s.n = res.rows.size() - s.failures;
  s.acceptance = sample.acceptance();
  s.runtime_seconds = seconds_since(t0);
  return res;
}

void write_csv(std::ostream& out, const std::vector<Row>& rows) {
  const auto old = out.precision(17);
  out << "curve_id,e_lambda,l2,h1,classification\n";
  for (const Row& r : rows) {
    out << r.curve_id << ',';
    if (r.error.empty()) out << r.e_lambda;
    out << ',';
    if (r.l2) out << *r.l2;
    out << ',';
    if (r.h1) out << *r.h1;
    out << ',' << (r.error.empty() ? r.classification : std::string("error")) << '\n';
  }
  out.precision(old);
}

}  // namespace elb::harness
