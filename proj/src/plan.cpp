#include "redplan/plan.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "redplan/errors.hpp"

namespace redplan {

DatasetSpec::DatasetSpec(std::size_t num_samples) : num_samples(num_samples) {
  if (num_samples == 0) {
    throw InvalidArgument("dataset must contain at least one sample");
  }
}

BatchingPlan::BatchingPlan(DatasetSpec dataset, std::vector<Batch> batches)
    : dataset_(dataset), batches_(std::move(batches)), kind_(BatchKind::kNonOverlapping) {
  const std::size_t d = dataset_.num_samples;
  if (batches_.empty()) {
    throw InvalidArgument("batching plan needs at least one batch");
  }
  const std::size_t size = batches_.front().size();
  if (size == 0) {
    throw InvalidArgument("batches must be non-empty");
  }

  std::vector<bool> covered(d, false);
  std::set<Batch> distinct;
  for (std::size_t i = 0; i < batches_.size(); ++i) {
    const Batch& b = batches_[i];
    if (b.size() != size) {
      throw InvalidArgument(
          fmt::format("batch {} has {} samples but batch 0 has {}; batch sizes must be equal", i,
                      b.size(), size));
    }
    Batch sorted = b;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidArgument(fmt::format("batch {} lists a sample more than once", i));
    }
    if (sorted.back() >= d) {
      throw InvalidArgument(
          fmt::format("batch {} references sample {} outside [0, {})", i, sorted.back(), d));
    }
    for (std::size_t s : sorted) {
      covered[s] = true;
    }
    distinct.insert(std::move(sorted));
  }

  const auto missing = std::find(covered.begin(), covered.end(), false);
  if (missing != covered.end()) {
    throw InvalidArgument(fmt::format("sample {} is not contained in any batch",
                                      std::distance(covered.begin(), missing)));
  }

  // With full coverage, the distinct batches are disjoint iff their sizes sum
  // to D; otherwise two distinct (hence partially intersecting) batches meet.
  const bool distinct_disjoint = distinct.size() * size == d;
  if (distinct.size() == batches_.size() && distinct_disjoint) {
    kind_ = BatchKind::kNonOverlapping;
  } else if (!distinct_disjoint) {
    kind_ = BatchKind::kOverlapping;
  } else {
    throw InvalidArgument(
        "batches repeat without partial overlap; replicate through the assignment instead");
  }
}

BatchingPlan make_nonoverlapping_batches(DatasetSpec dataset, std::size_t num_batches) {
  const std::size_t d = dataset.num_samples;
  if (num_batches == 0) {
    throw InvalidArgument("number of batches must be at least 1");
  }
  if (d % num_batches != 0) {
    throw DivisibilityError(num_batches, d, "number of batches must divide the dataset size");
  }
  const std::size_t size = d / num_batches;
  std::vector<Batch> batches(num_batches);
  for (std::size_t i = 0; i < num_batches; ++i) {
    batches[i].resize(size);
    for (std::size_t m = 0; m < size; ++m) {
      batches[i][m] = i * size + m;
    }
  }
  return BatchingPlan(dataset, std::move(batches));
}

BatchingPlan make_shingled_batches(DatasetSpec dataset, std::size_t num_batches,
                                   std::size_t batch_size) {
  const std::size_t d = dataset.num_samples;
  if (num_batches == 0 || batch_size == 0) {
    throw InvalidArgument("number of batches and batch size must be at least 1");
  }
  if (batch_size > d) {
    throw InvalidArgument(
        fmt::format("batch size {} exceeds the dataset size {}", batch_size, d));
  }
  const std::size_t stride = (d + num_batches - 1) / num_batches;
  if (batch_size <= stride) {
    throw NoOverlapError(fmt::format(
        "batch size {} does not exceed the stride {}; shingles would not overlap", batch_size,
        stride));
  }
  if (batch_size == d) {
    throw NoOverlapError("every shingle would hold the whole dataset; no partial overlap");
  }
  std::vector<Batch> batches(num_batches);
  for (std::size_t i = 0; i < num_batches; ++i) {
    batches[i].resize(batch_size);
    for (std::size_t m = 0; m < batch_size; ++m) {
      batches[i][m] = (i * stride + m) % d;
    }
  }
  return BatchingPlan(dataset, std::move(batches));
}

AssignmentPlan balanced_assignment(const BatchingPlan& batching, std::size_t num_workers) {
  const std::size_t b = batching.num_batches();
  if (num_workers == 0) {
    throw InvalidArgument("number of workers must be at least 1");
  }
  if (num_workers % b != 0) {
    throw DivisibilityError(b, num_workers, "number of batches must divide the worker count");
  }
  const std::size_t per_batch = num_workers / b;
  std::vector<std::size_t> worker_to_batch(num_workers);
  for (std::size_t j = 0; j < num_workers; ++j) {
    worker_to_batch[j] = j / per_batch;
  }
  return explicit_assignment(batching, worker_to_batch);
}

AssignmentPlan explicit_assignment(const BatchingPlan& batching,
                                   std::span<const std::size_t> worker_to_batch) {
  const std::size_t b = batching.num_batches();
  if (worker_to_batch.empty()) {
    throw InvalidArgument("assignment needs at least one worker");
  }
  std::vector<bool> hosted(b, false);
  for (std::size_t j = 0; j < worker_to_batch.size(); ++j) {
    if (worker_to_batch[j] >= b) {
      throw InvalidArgument(fmt::format("worker {} references batch {} but only {} batches exist",
                                        j, worker_to_batch[j], b));
    }
    hosted[worker_to_batch[j]] = true;
  }
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < b; ++i) {
    if (!hosted[i]) {
      missing.push_back(i);
    }
  }
  if (!missing.empty()) {
    throw IncompleteAssignmentError(std::move(missing));
  }
  return AssignmentPlan(b, std::vector<std::size_t>(worker_to_batch.begin(), worker_to_batch.end()));
}

std::vector<std::size_t> replication_profile(const AssignmentPlan& plan) {
  std::vector<std::size_t> profile(plan.num_batches(), 0);
  for (std::size_t batch : plan.worker_to_batch()) {
    ++profile[batch];
  }
  return profile;
}

}  // namespace redplan
