#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "redplan/distribution.hpp"
#include "redplan/plan.hpp"
#include "redplan/plan_io.hpp"

namespace redplan {

struct SimulationSpec {
  ReplicationPlan plan;
  ServiceDistribution per_sample;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

struct SimulationSummary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n - 1) estimator
  double std_error = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SimulationSummary&, const SimulationSummary&) = default;
};

struct SimulationOptions {
  // Worker threads for trial execution; 0 selects the hardware concurrency.
  // Results do not depend on this value.
  unsigned threads = 1;
};

// Throws InvalidArgument if the plan halves disagree or trials == 0.
void validate(const SimulationSpec& spec);

// Finish time of every worker in one trial. Worker j's draw comes from the
// counter-based stream (seed, trial, j) pushed through the law of its batch.
std::vector<double> worker_finish_times(const SimulationSpec& spec, std::uint64_t trial);

// Completion as the first instant at which finished workers cover every sample.
double completion_by_coverage(const ReplicationPlan& plan, std::span<const double> finish_times);

// Max over batches of the earliest finisher hosting it. Equals the coverage
// rule for non-overlapping batching only.
double completion_by_batch_minima(const ReplicationPlan& plan,
                                  std::span<const double> finish_times);

// Per-trial completion times in trial order.
std::vector<double> simulate_trials(const SimulationSpec& spec, const SimulationOptions& options = {});

SimulationSummary summarize(std::span<const double> values, std::uint64_t seed);

SimulationSummary simulate_completion(const SimulationSpec& spec,
                                      const SimulationOptions& options = {});

struct PairwiseDifference {
  std::size_t plan_a = 0;
  std::size_t plan_b = 0;
  double diff = 0.0;  // mean(a) - mean(b)
  double ci_lo = 0.0;
  double ci_hi = 0.0;

  bool excludes_zero() const noexcept { return ci_lo > 0.0 || ci_hi < 0.0; }
};

struct PolicyComparison {
  std::vector<SimulationSummary> summaries;
  std::vector<PairwiseDifference> pairs;  // every (a, b) with a < b
  std::size_t best = 0;                   // index of the smallest empirical mean
};

// Two-sided 99% normal quantile used for the difference intervals.
inline constexpr double kZ99 = 2.5758293035489004;

// Runs every spec under `common_seed`, so worker j of trial t sees the same
// uniform draw in every policy (common random numbers), then reports paired
// mean differences with 99% intervals.
PolicyComparison compare_policies(std::span<const SimulationSpec> specs, std::uint64_t common_seed,
                                  const SimulationOptions& options = {});

}  // namespace redplan
