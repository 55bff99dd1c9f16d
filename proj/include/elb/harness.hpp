#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elb/feedback_projection.hpp"
#include "elb/geom.hpp"

namespace elb::harness {

/// Counter-based generator: every draw is a pure function of (seed, counter), so samples
/// do not depend on platform, thread count or evaluation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t counter) const;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const;
  double uniform(std::uint64_t counter, double lo, double hi) const { return lo + (hi - lo) * uniform(counter); }

 private:
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

enum class Generator { InnerPointsUnitBox, RandomQuadUnitDisc, ZoneInterior };
enum class ConstraintProfile { None, Strict, RelaxedQuarter, RelaxedSixth };

std::string_view to_string(Generator g);
std::string_view to_string(ConstraintProfile p);
Generator parse_generator(std::string_view name);
ConstraintProfile parse_constraint_profile(std::string_view name);

struct SampleSpec {
  std::size_t count = 1000;
  Generator generator = Generator::RandomQuadUnitDisc;
  std::uint64_t seed = 1;
  ConstraintProfile constraint_profile = ConstraintProfile::None;
};

enum class Execution { Serial, Parallel };

/// Thread count for parallel batches: ELB_THREADS if set and positive, else the OpenMP default.
int configured_threads();

/// Candidate number `index` of a generator, before any filtering.
CubicBezier candidate(Generator g, const CounterRng& rng, std::uint64_t index);

/// True when the candidate survives the generator's own rejection step and the profile.
bool accepted(Generator g, ConstraintProfile p, const CubicBezier& c);

struct Sample {
  std::vector<CubicBezier> curves;
  std::uint64_t candidates = 0;  // candidates drawn to fill the sample

  double acceptance() const { return candidates ? double(curves.size()) / double(candidates) : 0.0; }
};

/// Walks candidates 0, 1, 2, ... and keeps the accepted ones in order. Identical output
/// for both execution modes.
Sample sample_curves(const SampleSpec& spec, Execution mode = Execution::Parallel);

struct Stats {
  double mean = 0.0;
  double median = 0.0;
  double p99 = 0.0;
  double max = 0.0;
};

/// Nearest-rank p99 and mid-average median; NaN entries are ignored.
Stats stats_of(std::vector<double> values);

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

struct ExperimentSummary {
  std::string experiment;
  SampleSpec spec;
  std::size_t n = 0;
  Stats e_lambda;
  std::optional<Stats> l2;
  std::optional<Stats> h1;
  std::optional<double> spearman_e_lambda_l2;
  std::size_t failures = 0;
  double acceptance = 0.0;
  double runtime_seconds = 0.0;
  /// Largest endpoint or end-tangent deviation seen by a projection experiment.
  std::optional<double> end_data_error;
  std::optional<FeedbackConfig> feedback;
};

struct Row {
  std::size_t curve_id = 0;
  double e_lambda = 0.0;
  std::optional<double> l2;
  std::optional<double> h1;
  std::string classification;
  std::string error;  // non-empty when this curve failed
};

struct ExperimentResult {
  ExperimentSummary summary;
  std::vector<Row> rows;
};

/// lambda fit and full elastica fit per curve; a failing curve is flagged and skipped.
ExperimentResult run_correlation_experiment(const SampleSpec& spec, Execution mode = Execution::Parallel);
ExperimentResult correlation_rows(const std::vector<CubicBezier>& curves, Execution mode = Execution::Parallel);

/// feedback_project on every sampled curve; statistics of the output e_lambda.
ExperimentResult run_projection_experiment(const SampleSpec& spec, const FeedbackConfig& config = {},
                                           Execution mode = Execution::Parallel);

/// e_lambda over n zone-interior curves.
ExperimentResult run_zone_sweep(std::size_t n, std::uint64_t seed = 1, Execution mode = Execution::Parallel);

/// Largest deviation of endpoints and end-tangent angles between input and output.
double end_data_error(const CubicBezier& input, const CubicBezier& output);

void write_csv(std::ostream& out, const std::vector<Row>& rows);

}  // namespace elb::harness
