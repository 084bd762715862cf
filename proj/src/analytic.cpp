#include "redplan/analytic.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "redplan/errors.hpp"

namespace redplan {

SystemConfig::SystemConfig(std::size_t num_samples, std::size_t num_workers,
                           ServiceDistribution per_sample, std::size_t num_batches)
    : num_samples_(num_samples),
      num_workers_(num_workers),
      per_sample_(per_sample),
      num_batches_(num_batches) {
  if (num_samples == 0 || num_workers == 0 || num_batches == 0) {
    throw InvalidArgument("samples, workers and batches must all be at least 1");
  }
  if (num_samples % num_batches != 0) {
    throw DivisibilityError(num_batches, num_samples,
                            "number of batches must divide the number of samples");
  }
  if (num_workers % num_batches != 0) {
    throw DivisibilityError(num_batches, num_workers,
                            "number of batches must divide the number of workers");
  }
}

Objective parse_objective(std::string_view name) {
  if (name == "mean") {
    return Objective::kMean;
  }
  if (name == "variance") {
    return Objective::kVariance;
  }
  throw InvalidArgument(fmt::format("unknown objective '{}' (expected mean or variance)", name));
}

std::string_view objective_name(Objective objective) noexcept {
  return objective == Objective::kMean ? "mean" : "variance";
}

std::vector<std::size_t> feasible_batch_counts(std::size_t num_samples, std::size_t num_workers) {
  if (num_samples == 0 || num_workers == 0) {
    throw InvalidArgument("samples and workers must be at least 1");
  }
  const std::size_t g = std::gcd(num_samples, num_workers);
  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  for (std::size_t i = 1; i * i <= g; ++i) {
    if (g % i == 0) {
      small.push_back(i);
      if (i != g / i) {
        large.push_back(g / i);
      }
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

CompletionStats completion_stats_balanced(const SystemConfig& config) {
  const ServiceDistribution batch_law =
      batch_service_distribution(config.per_sample(), config.batch_size());
  const ServiceDistribution winner = min_closure(batch_law, config.replicas_per_batch());
  const Moments m = max_moments(winner, config.num_batches());
  if (!std::isfinite(m.mean) || !std::isfinite(m.variance)) {
    throw NumericalError(fmt::format("non-finite completion moments for B={}",
                                     config.num_batches()));
  }
  return {m.mean, m.variance};
}

double objective_value(const CompletionStats& stats, Objective objective) noexcept {
  return objective == Objective::kMean ? stats.mean : stats.variance;
}

OptimizationResult optimize_redundancy(std::size_t num_samples, std::size_t num_workers,
                                       const ServiceDistribution& per_sample, Objective objective) {
  OptimizationResult result;
  for (std::size_t b : feasible_batch_counts(num_samples, num_workers)) {
    const SystemConfig config(num_samples, num_workers, per_sample, b);
    result.sweep.push_back({b, completion_stats_balanced(config)});
  }
  // Strict comparison while scanning in ascending B keeps the smallest B on ties.
  const SweepPoint* best = &result.sweep.front();
  for (const SweepPoint& p : result.sweep) {
    if (objective_value(p.stats, objective) < objective_value(best->stats, objective)) {
      best = &p;
    }
  }
  result.best_batches = best->num_batches;
  result.best_value = objective_value(best->stats, objective);
  return result;
}

}  // namespace redplan
