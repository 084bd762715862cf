#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace redplan {

struct DatasetSpec {
  explicit DatasetSpec(std::size_t num_samples);

  std::size_t num_samples;
};

enum class BatchKind { kNonOverlapping, kOverlapping };

using Batch = std::vector<std::size_t>;

// Equal-size batches of sample indices that jointly cover the dataset.
class BatchingPlan {
 public:
  // Validates coverage, equal sizes and in-range indices, then classifies the
  // batches: pairwise disjoint is non-overlapping, a partially intersecting
  // pair is overlapping. Anything else (e.g. duplicated batches) is rejected.
  BatchingPlan(DatasetSpec dataset, std::vector<Batch> batches);

  const DatasetSpec& dataset() const noexcept { return dataset_; }
  std::size_t num_samples() const noexcept { return dataset_.num_samples; }
  std::size_t num_batches() const noexcept { return batches_.size(); }
  std::size_t batch_size() const noexcept { return batches_.front().size(); }
  BatchKind kind() const noexcept { return kind_; }
  const std::vector<Batch>& batches() const noexcept { return batches_; }
  const Batch& batch(std::size_t i) const { return batches_.at(i); }

  friend bool operator==(const BatchingPlan& a, const BatchingPlan& b) {
    return a.dataset_.num_samples == b.dataset_.num_samples && a.batches_ == b.batches_;
  }

 private:
  DatasetSpec dataset_;
  std::vector<Batch> batches_;
  BatchKind kind_;
};

// Maps each worker to the single batch it hosts.
class AssignmentPlan {
 public:
  std::size_t num_workers() const noexcept { return worker_to_batch_.size(); }
  std::size_t num_batches() const noexcept { return num_batches_; }
  const std::vector<std::size_t>& worker_to_batch() const noexcept { return worker_to_batch_; }

  friend bool operator==(const AssignmentPlan&, const AssignmentPlan&) = default;

 private:
  friend AssignmentPlan explicit_assignment(const BatchingPlan&, std::span<const std::size_t>);
  AssignmentPlan(std::size_t num_batches, std::vector<std::size_t> worker_to_batch)
      : num_batches_(num_batches), worker_to_batch_(std::move(worker_to_batch)) {}

  std::size_t num_batches_;
  std::vector<std::size_t> worker_to_batch_;
};

// Batch i is the contiguous range [i*D/B, (i+1)*D/B).
BatchingPlan make_nonoverlapping_batches(DatasetSpec dataset, std::size_t num_batches);

// Cyclic shingles: batch i covers (i*stride + m) mod D for m < batch_size, with
// stride = ceil(D / num_batches).
BatchingPlan make_shingled_batches(DatasetSpec dataset, std::size_t num_batches,
                                   std::size_t batch_size);

// Each batch hosted by W/B consecutive workers.
AssignmentPlan balanced_assignment(const BatchingPlan& batching, std::size_t num_workers);

AssignmentPlan explicit_assignment(const BatchingPlan& batching,
                                   std::span<const std::size_t> worker_to_batch);

// Number of workers hosting each batch.
std::vector<std::size_t> replication_profile(const AssignmentPlan& plan);

}  // namespace redplan
