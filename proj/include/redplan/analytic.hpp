#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "redplan/distribution.hpp"

namespace redplan {

// A balanced non-overlapping configuration: D samples in B equal batches,
// each batch hosted by W/B of the W workers.
class SystemConfig {
 public:
  // Throws DivisibilityError unless B divides both D and W.
  SystemConfig(std::size_t num_samples, std::size_t num_workers, ServiceDistribution per_sample,
               std::size_t num_batches);

  std::size_t num_samples() const noexcept { return num_samples_; }
  std::size_t num_workers() const noexcept { return num_workers_; }
  std::size_t num_batches() const noexcept { return num_batches_; }
  std::size_t batch_size() const noexcept { return num_samples_ / num_batches_; }
  std::size_t replicas_per_batch() const noexcept { return num_workers_ / num_batches_; }
  const ServiceDistribution& per_sample() const noexcept { return per_sample_; }

 private:
  std::size_t num_samples_;
  std::size_t num_workers_;
  ServiceDistribution per_sample_;
  std::size_t num_batches_;
};

struct CompletionStats {
  double mean = 0.0;
  double variance = 0.0;
};

struct SweepPoint {
  std::size_t num_batches = 0;
  CompletionStats stats;
};

enum class Objective { kMean, kVariance };

Objective parse_objective(std::string_view name);
std::string_view objective_name(Objective objective) noexcept;

struct OptimizationResult {
  std::size_t best_batches = 0;
  double best_value = 0.0;
  std::vector<SweepPoint> sweep;
};

// Batch counts B >= 1 dividing both D and W, ascending.
std::vector<std::size_t> feasible_batch_counts(std::size_t num_samples, std::size_t num_workers);

// Exact completion-time moments. The batch law is scaled by the batch size,
// the W/B replicas of a batch race (min closure), and the job waits for the
// slowest of the B batch winners (max of B i.i.d. copies).
CompletionStats completion_stats_balanced(const SystemConfig& config);

// Exhaustive search over the feasible set; ties go to the smaller B.
OptimizationResult optimize_redundancy(std::size_t num_samples, std::size_t num_workers,
                                       const ServiceDistribution& per_sample, Objective objective);

double objective_value(const CompletionStats& stats, Objective objective) noexcept;

}  // namespace redplan
