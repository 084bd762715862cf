#include "redplan/monte_carlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <thread>

#include <fmt/format.h>

#include "redplan/errors.hpp"

namespace redplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-spec precomputation shared read-only by all trial threads.
class TrialKernel {
 public:
  explicit TrialKernel(const SimulationSpec& spec)
      : plan_(spec.plan), seed_(spec.seed) {
    const auto& w2b = plan_.assignment.worker_to_batch();
    laws_.reserve(w2b.size());
    for (std::size_t batch : w2b) {
      laws_.push_back(
          batch_service_distribution(spec.per_sample, plan_.batching.batch(batch).size()));
    }
  }

  std::size_t num_workers() const noexcept { return laws_.size(); }

  void draw(std::uint64_t trial, std::span<double> out) const noexcept {
    for (std::size_t j = 0; j < laws_.size(); ++j) {
      RandomStream stream = RandomStream::for_cell(seed_, trial, j);
      out[j] = sample(laws_[j], stream);
    }
  }

  double completion(std::span<const double> finish) const {
    if (plan_.batching.kind() == BatchKind::kNonOverlapping) {
      return completion_by_batch_minima(plan_, finish);
    }
    return completion_by_coverage(plan_, finish);
  }

 private:
  const ReplicationPlan& plan_;
  std::uint64_t seed_;
  std::vector<ServiceDistribution> laws_;
};

void run_range(const TrialKernel& kernel, std::size_t begin, std::size_t end,
               std::span<double> values) {
  std::vector<double> finish(kernel.num_workers());
  for (std::size_t t = begin; t < end; ++t) {
    kernel.draw(t, finish);
    values[t] = kernel.completion(finish);
  }
}

}  // namespace

void validate(const SimulationSpec& spec) {
  if (spec.trials == 0) {
    throw InvalidArgument("simulation needs at least one trial");
  }
  if (spec.plan.assignment.num_batches() != spec.plan.batching.num_batches()) {
    throw InvalidArgument(fmt::format("assignment refers to {} batches but the batching has {}",
                                      spec.plan.assignment.num_batches(),
                                      spec.plan.batching.num_batches()));
  }
}

std::vector<double> worker_finish_times(const SimulationSpec& spec, std::uint64_t trial) {
  validate(spec);
  const TrialKernel kernel(spec);
  std::vector<double> finish(kernel.num_workers());
  kernel.draw(trial, finish);
  return finish;
}

double completion_by_coverage(const ReplicationPlan& plan, std::span<const double> finish_times) {
  const auto& w2b = plan.assignment.worker_to_batch();
  if (finish_times.size() != w2b.size()) {
    throw InvalidArgument("one finish time per worker is required");
  }
  std::vector<double> cover(plan.batching.num_samples(), kInf);
  for (std::size_t j = 0; j < w2b.size(); ++j) {
    for (std::size_t s : plan.batching.batch(w2b[j])) {
      cover[s] = std::min(cover[s], finish_times[j]);
    }
  }
  return *std::max_element(cover.begin(), cover.end());
}

double completion_by_batch_minima(const ReplicationPlan& plan,
                                  std::span<const double> finish_times) {
  const auto& w2b = plan.assignment.worker_to_batch();
  if (finish_times.size() != w2b.size()) {
    throw InvalidArgument("one finish time per worker is required");
  }
  // Up to 64 batches stay on the stack.
  constexpr std::size_t kInline = 64;
  std::array<double, kInline> inline_buf;
  std::vector<double> heap_buf;
  std::span<double> best;
  if (plan.batching.num_batches() <= kInline) {
    best = std::span<double>(inline_buf.data(), plan.batching.num_batches());
  } else {
    heap_buf.resize(plan.batching.num_batches());
    best = heap_buf;
  }
  std::fill(best.begin(), best.end(), kInf);
  for (std::size_t j = 0; j < w2b.size(); ++j) {
    best[w2b[j]] = std::min(best[w2b[j]], finish_times[j]);
  }
  return *std::max_element(best.begin(), best.end());
}

std::vector<double> simulate_trials(const SimulationSpec& spec, const SimulationOptions& options) {
  validate(spec);
  const TrialKernel kernel(spec);
  std::vector<double> values(spec.trials);

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(spec.trials, 256)));
  if (threads == 1) {
    run_range(kernel, 0, spec.trials, values);
    return values;
  }
  // Each thread owns a disjoint slice of `values`; trial t always writes slot t.
  std::vector<std::jthread> pool;
  const std::size_t chunk = (spec.trials + threads - 1) / threads;
  for (unsigned i = 0; i < threads; ++i) {
    const std::size_t begin = std::min(spec.trials, i * chunk);
    const std::size_t end = std::min(spec.trials, begin + chunk);
    pool.emplace_back([&kernel, &values, begin, end] { run_range(kernel, begin, end, values); });
  }
  pool.clear();
  return values;
}

SimulationSummary summarize(std::span<const double> values, std::uint64_t seed) {
  if (values.empty()) {
    throw InvalidArgument("cannot summarise zero trials");
  }
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) {
    ss += (v - mean) * (v - mean);
  }
  const double variance = values.size() > 1 ? ss / (n - 1.0) : 0.0;
  if (!std::isfinite(mean) || !std::isfinite(variance)) {
    throw NumericalError("simulation produced non-finite statistics");
  }
  return {mean, variance, std::sqrt(variance / n), values.size(), seed};
}

SimulationSummary simulate_completion(const SimulationSpec& spec,
                                      const SimulationOptions& options) {
  return summarize(simulate_trials(spec, options), spec.seed);
}

PolicyComparison compare_policies(std::span<const SimulationSpec> specs, std::uint64_t common_seed,
                                  const SimulationOptions& options) {
  if (specs.size() < 2) {
    throw InvalidArgument("comparison needs at least two policies");
  }
  for (const SimulationSpec& s : specs) {
    if (s.trials != specs.front().trials) {
      throw InvalidArgument("compared policies must use the same number of trials");
    }
    if (s.per_sample != specs.front().per_sample) {
      throw InvalidArgument("compared policies must share the per-sample distribution");
    }
  }

  PolicyComparison out;
  std::vector<std::vector<double>> values;
  for (const SimulationSpec& s : specs) {
    SimulationSpec seeded = s;
    seeded.seed = common_seed;
    values.push_back(simulate_trials(seeded, options));
    out.summaries.push_back(summarize(values.back(), common_seed));
  }

  const std::size_t trials = specs.front().trials;
  std::vector<double> diff(trials);
  for (std::size_t a = 0; a < specs.size(); ++a) {
    for (std::size_t b = a + 1; b < specs.size(); ++b) {
      for (std::size_t t = 0; t < trials; ++t) {
        diff[t] = values[a][t] - values[b][t];
      }
      const SimulationSummary d = summarize(diff, common_seed);
      const double half = kZ99 * d.std_error;
      out.pairs.push_back({a, b, d.mean, d.mean - half, d.mean + half});
    }
  }
  for (std::size_t i = 1; i < out.summaries.size(); ++i) {
    if (out.summaries[i].mean < out.summaries[out.best].mean) {
      out.best = i;
    }
  }
  return out;
}

}  // namespace redplan
