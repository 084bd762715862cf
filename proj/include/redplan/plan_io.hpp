#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "redplan/plan.hpp"

namespace redplan {

// A batching plan together with the assignment of workers to its batches.
struct ReplicationPlan {
  BatchingPlan batching;
  AssignmentPlan assignment;
};

ReplicationPlan make_balanced_plan(std::size_t num_samples, std::size_t num_workers,
                                   std::size_t num_batches);

// Plan file schema:
//   {
//     "num_samples": 4,
//     "batches": [[0, 1], [2, 3]],
//     "worker_to_batch": [0, 0, 1, 1]
//   }
// Malformed JSON or missing/mistyped fields raise PlanParseError; structural
// violations raise the same errors as the plan constructors.
ReplicationPlan parse_plan(std::string_view text);
ReplicationPlan load_plan_file(const std::filesystem::path& path);

std::string plan_to_json(const ReplicationPlan& plan);
void save_plan_file(const ReplicationPlan& plan, const std::filesystem::path& path);

}  // namespace redplan
