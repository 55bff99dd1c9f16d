// Serial reference vs OpenMP batch loops of the harness. Each row also checks that both
// paths produce the same numbers.
//
//   bench_batches [scale]     scale multiplies the default batch sizes (default 1)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "elb/harness.hpp"

using namespace elb::harness;

namespace {

double timed(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_rows(const ExperimentResult& a, const ExperimentResult& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    if (a.rows[i].e_lambda != b.rows[i].e_lambda || a.rows[i].l2 != b.rows[i].l2) return false;
  return true;
}

void row(const std::string& name, std::size_t n, double serial, double parallel, bool same) {
  std::printf("%-22s %8zu %10.3f %10.3f %8.2fx  %s\n", name.c_str(), n, serial, parallel, serial / parallel,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const double scale = argc > 1 ? std::atof(argv[1]) : 1.0;
  auto n_of = [scale](double base) { return static_cast<std::size_t>(base * scale); };

  std::printf("threads %d\n", configured_threads());
  std::printf("%-22s %8s %10s %10s %9s\n", "batch", "n", "serial s", "omp s", "speedup");

  {
    const SampleSpec spec{n_of(200000), Generator::RandomQuadUnitDisc, 1, ConstraintProfile::Strict};
    Sample a, b;
    const double ts = timed([&] { a = sample_curves(spec, Execution::Serial); });
    const double tp = timed([&] { b = sample_curves(spec, Execution::Parallel); });
    row("sample strict", spec.count, ts, tp, a.curves == b.curves);
  }
  {
    const std::size_t n = n_of(20000);
    ExperimentResult a, b;
    const double ts = timed([&] { a = run_zone_sweep(n, 1, Execution::Serial); });
    const double tp = timed([&] { b = run_zone_sweep(n, 1, Execution::Parallel); });
    row("zone sweep e_lambda", n, ts, tp, same_rows(a, b));
  }
  {
    const SampleSpec spec{n_of(1000), Generator::RandomQuadUnitDisc, 1, ConstraintProfile::Strict};
    ExperimentResult a, b;
    const double ts = timed([&] { a = run_projection_experiment(spec, {}, Execution::Serial); });
    const double tp = timed([&] { b = run_projection_experiment(spec, {}, Execution::Parallel); });
    row("feedback projection", spec.count, ts, tp, same_rows(a, b));
  }
  {
    const SampleSpec spec{n_of(100), Generator::ZoneInterior, 1, ConstraintProfile::None};
    ExperimentResult a, b;
    const double ts = timed([&] { a = run_correlation_experiment(spec, Execution::Serial); });
    const double tp = timed([&] { b = run_correlation_experiment(spec, Execution::Parallel); });
    row("elastica fits", spec.count, ts, tp, same_rows(a, b));
  }
  return 0;
}
