#include "redplan/plan_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "redplan/errors.hpp"

namespace redplan {

using nlohmann::json;

namespace {

std::size_t read_count(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw PlanParseError(fmt::format("{} must be a non-negative integer", what));
  }
  return j.get<std::size_t>();
}

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) {
    throw PlanParseError(fmt::format("plan is missing the \"{}\" field", name));
  }
  return *it;
}

std::vector<std::size_t> read_index_list(const json& j, const std::string& what) {
  if (!j.is_array()) {
    throw PlanParseError(fmt::format("{} must be an array of indices", what));
  }
  std::vector<std::size_t> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    out.push_back(read_count(e, what.c_str()));
  }
  return out;
}

}  // namespace

ReplicationPlan make_balanced_plan(std::size_t num_samples, std::size_t num_workers,
                                   std::size_t num_batches) {
  BatchingPlan batching = make_nonoverlapping_batches(DatasetSpec(num_samples), num_batches);
  AssignmentPlan assignment = balanced_assignment(batching, num_workers);
  return {std::move(batching), std::move(assignment)};
}

ReplicationPlan parse_plan(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PlanParseError(fmt::format("plan is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) {
    throw PlanParseError("plan must be a JSON object");
  }

  const std::size_t num_samples = read_count(field(doc, "num_samples"), "num_samples");
  const json& batches_json = field(doc, "batches");
  if (!batches_json.is_array()) {
    throw PlanParseError("\"batches\" must be an array of index arrays");
  }
  std::vector<Batch> batches;
  for (std::size_t i = 0; i < batches_json.size(); ++i) {
    batches.push_back(read_index_list(batches_json[i], fmt::format("batches[{}]", i)));
  }
  const auto worker_to_batch = read_index_list(field(doc, "worker_to_batch"), "worker_to_batch");

  BatchingPlan batching(DatasetSpec(num_samples), std::move(batches));
  AssignmentPlan assignment = explicit_assignment(batching, worker_to_batch);
  return {std::move(batching), std::move(assignment)};
}

ReplicationPlan load_plan_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw PlanParseError(fmt::format("cannot open plan file {}", path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_plan(buf.str());
  } catch (const PlanParseError& e) {
    throw PlanParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string plan_to_json(const ReplicationPlan& plan) {
  json doc;
  doc["num_samples"] = plan.batching.num_samples();
  doc["batches"] = plan.batching.batches();
  doc["worker_to_batch"] = plan.assignment.worker_to_batch();
  return doc.dump(2) + "\n";
}

void save_plan_file(const ReplicationPlan& plan, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw InvalidArgument(fmt::format("cannot write plan file {}", path.string()));
  }
  out << plan_to_json(plan);
}

}  // namespace redplan
