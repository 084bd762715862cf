#include "redplan/cli.hpp"

#include <cstdint>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "redplan/analytic.hpp"
#include "redplan/errors.hpp"
#include "redplan/monte_carlo.hpp"
#include "redplan/plan_io.hpp"
#include "redplan/report.hpp"

namespace redplan {

namespace {

// Everything a subcommand may read from the command line.
struct ExperimentConfig {
  std::size_t workers = 0;
  std::optional<std::size_t> samples;  // defaults to workers
  std::string dist = "exp";
  std::vector<double> mu{1.0};
  std::vector<double> delta{0.0};
  std::optional<std::size_t> batches;
  std::optional<std::size_t> b_min;
  std::optional<std::size_t> b_max;
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string objective = "mean";
  std::string out;
  std::string pairs_out;
  std::string svg;
  std::vector<std::string> plan_files;
  std::optional<std::size_t> shingle_size;
  std::vector<std::size_t> assign;

  std::size_t num_samples() const { return samples.value_or(workers); }
};

struct Command {
  CLI::App* app;
  std::function<void()> run;
};

void add_system_options(CLI::App* sub, ExperimentConfig& cfg, bool workers_required) {
  auto* w = sub->add_option("--workers", cfg.workers, "Number of workers W");
  if (workers_required) {
    w->required();
  }
  sub->add_option("--samples", cfg.samples, "Number of data samples D (default: W)");
}

void add_distribution_options(CLI::App* sub, ExperimentConfig& cfg, bool multi) {
  sub->add_option("--dist", cfg.dist, "Per-sample service law")
      ->check(CLI::IsMember({"exp", "sexp"}))
      ->capture_default_str();
  auto* mu = sub->add_option("--mu", cfg.mu, "Per-sample service rate")->capture_default_str();
  auto* delta =
      sub->add_option("--delta", cfg.delta, "Per-sample shift (sexp only)")->capture_default_str();
  if (!multi) {
    mu->expected(1);
    delta->expected(1);
  }
}

void add_simulation_options(CLI::App* sub, ExperimentConfig& cfg) {
  sub->add_option("--trials", cfg.trials, "Monte Carlo trials")->capture_default_str();
  sub->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  sub->add_option("--threads", cfg.threads, "Trial threads, 0 = all cores; output is unaffected")
      ->capture_default_str();
}

ServiceDistribution make_distribution(const std::string& family, double mu, double delta) {
  if (family == "exp") {
    if (delta != 0.0) {
      throw InvalidArgument("--delta applies only to --dist sexp");
    }
    return Exponential(mu);
  }
  return ShiftedExponential(mu, delta);
}

// (mu, delta) pairs of a sweep; a single value broadcasts against a list.
std::vector<std::pair<double, double>> parameter_pairs(const ExperimentConfig& cfg) {
  const auto& mu = cfg.mu;
  const auto& delta = cfg.delta;
  if (mu.size() != delta.size() && mu.size() != 1 && delta.size() != 1) {
    throw InvalidArgument(fmt::format(
        "--mu has {} values and --delta has {}; give equal counts or a single value", mu.size(),
        delta.size()));
  }
  const std::size_t n = std::max(mu.size(), delta.size());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(mu[mu.size() == 1 ? 0 : i], delta[delta.size() == 1 ? 0 : i]);
  }
  return out;
}

ServiceDistribution single_distribution(const ExperimentConfig& cfg) {
  return make_distribution(cfg.dist, cfg.mu.front(), cfg.delta.front());
}

void print_row(std::ostream& out, std::string_view key, const std::string& value) {
  fmt::print(out, "{:<11}{}\n", key, value);
}

CsvTable stats_table(const std::vector<SweepPoint>& sweep) {
  CsvTable table({"B", "mean", "variance"});
  for (const SweepPoint& p : sweep) {
    table.add_row({std::to_string(p.num_batches), format_real(p.stats.mean),
                   format_real(p.stats.variance)});
  }
  return table;
}

void cmd_analyze(const ExperimentConfig& cfg, std::ostream& out) {
  const SystemConfig config(cfg.num_samples(), cfg.workers, single_distribution(cfg),
                            cfg.batches.value());
  const CompletionStats stats = completion_stats_balanced(config);
  print_row(out, "config", fmt::format("D={} W={} B={} {}", config.num_samples(),
                                       config.num_workers(), config.num_batches(),
                                       describe(config.per_sample())));
  print_row(out, "mean", format_real(stats.mean));
  print_row(out, "variance", format_real(stats.variance));
  if (!cfg.out.empty()) {
    stats_table({{config.num_batches(), stats}}).append(cfg.out);
  }
}

void cmd_sweep(const ExperimentConfig& cfg, std::ostream& out) {
  const auto pairs = parameter_pairs(cfg);
  const bool labelled = pairs.size() > 1;
  CsvTable table = labelled ? CsvTable({"B", "mean", "variance", "mu", "delta"})
                            : CsvTable({"B", "mean", "variance"});
  std::vector<ChartSeries> series;
  std::vector<std::string> argmins;

  std::vector<std::size_t> counts;
  for (std::size_t b : feasible_batch_counts(cfg.num_samples(), cfg.workers)) {
    if (b >= cfg.b_min.value_or(0) && b <= cfg.b_max.value_or(b)) {
      counts.push_back(b);
    }
  }
  if (counts.empty()) {
    throw InvalidArgument("no feasible batch count lies inside [--b-min, --b-max]");
  }

  for (auto [mu, delta] : pairs) {
    const ServiceDistribution dist = make_distribution(cfg.dist, mu, delta);
    ChartSeries curve{fmt::format("mu={} delta={}", mu, delta), {}};
    const SweepPoint* best = nullptr;
    std::vector<SweepPoint> points;
    for (std::size_t b : counts) {
      points.push_back({b, completion_stats_balanced(SystemConfig(cfg.num_samples(), cfg.workers, dist, b))});
    }
    for (const SweepPoint& p : points) {
      std::vector<std::string> row{std::to_string(p.num_batches), format_real(p.stats.mean),
                                   format_real(p.stats.variance)};
      if (labelled) {
        row.push_back(format_real(mu));
        row.push_back(format_real(delta));
      }
      table.add_row(std::move(row));
      curve.points.emplace_back(static_cast<double>(p.num_batches), p.stats.mean);
      if (best == nullptr || p.stats.mean < best->stats.mean) {
        best = &p;
      }
    }
    argmins.push_back(fmt::format("{}: argmin B={} mean={}", curve.label, best->num_batches,
                                  format_real(best->stats.mean)));
    series.push_back(std::move(curve));
  }

  if (cfg.out.empty()) {
    out << table.to_string();
  } else {
    table.write(cfg.out);
    fmt::print(out, "wrote {} rows to {}\n", table.num_rows(), cfg.out);
    for (const auto& line : argmins) {
      fmt::print(out, "{}\n", line);
    }
  }
  if (!cfg.svg.empty()) {
    std::ofstream svg(cfg.svg, std::ios::binary);
    if (!svg) {
      throw InvalidArgument(fmt::format("cannot write {}", cfg.svg));
    }
    svg << render_line_chart(series, {fmt::format("Expected completion time, D={} W={}",
                                                  cfg.num_samples(), cfg.workers),
                                      "number of batches B", "expected completion time"});
  }
}

void cmd_optimize(const ExperimentConfig& cfg, std::ostream& out) {
  const Objective objective = parse_objective(cfg.objective);
  const OptimizationResult result =
      optimize_redundancy(cfg.num_samples(), cfg.workers, single_distribution(cfg), objective);
  print_row(out, "objective", std::string(objective_name(objective)));
  print_row(out, "best_B", std::to_string(result.best_batches));
  print_row(out, "best_value", format_real(result.best_value));
  const CsvTable table = stats_table(result.sweep);
  if (cfg.out.empty()) {
    out << table.to_string();
  } else {
    table.write(cfg.out);
  }
}

ReplicationPlan plan_from_config(const ExperimentConfig& cfg) {
  if (!cfg.plan_files.empty()) {
    if (cfg.plan_files.size() > 1) {
      throw InvalidArgument("simulate takes a single --plan-file");
    }
    if (cfg.batches) {
      throw InvalidArgument("--batches and --plan-file are mutually exclusive");
    }
    return load_plan_file(cfg.plan_files.front());
  }
  if (cfg.workers == 0) {
    throw InvalidArgument("--workers is required unless --plan-file is given");
  }
  if (!cfg.batches) {
    throw InvalidArgument("either --batches or --plan-file is required");
  }
  return make_balanced_plan(cfg.num_samples(), cfg.workers, *cfg.batches);
}

void cmd_simulate(const ExperimentConfig& cfg, std::ostream& out) {
  SimulationSpec spec{plan_from_config(cfg), single_distribution(cfg), cfg.trials, cfg.seed};
  const SimulationSummary s = simulate_completion(spec, {cfg.threads});
  const std::size_t b = spec.plan.batching.num_batches();
  print_row(out, "B", std::to_string(b));
  print_row(out, "trials", std::to_string(s.trials));
  print_row(out, "seed", std::to_string(s.seed));
  print_row(out, "mean", format_real(s.mean));
  print_row(out, "variance", format_real(s.variance));
  print_row(out, "std_error", format_real(s.std_error));
  if (!cfg.out.empty()) {
    CsvTable table({"B", "trials", "seed", "mean", "variance", "std_error"});
    table.add_row({std::to_string(b), std::to_string(s.trials), std::to_string(s.seed),
                   format_real(s.mean), format_real(s.variance), format_real(s.std_error)});
    table.append(cfg.out);
  }
}

void cmd_compare(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.plan_files.size() < 2) {
    throw InvalidArgument("compare needs at least two --plan-file arguments");
  }
  const ServiceDistribution dist = single_distribution(cfg);
  std::vector<SimulationSpec> specs;
  for (const auto& path : cfg.plan_files) {
    specs.push_back({load_plan_file(path), dist, cfg.trials, cfg.seed});
  }
  const PolicyComparison cmp = compare_policies(specs, cfg.seed, {cfg.threads});

  CsvTable summaries({"plan_id", "mean", "std_error"});
  CsvTable pairs({"plan_a", "plan_b", "diff", "ci_lo", "ci_hi"});
  fmt::print(out, "{} trials, seed {}, {}\n", cfg.trials, cfg.seed, describe(dist));
  fmt::print(out, "{:<8}{:<22}{:<22}{}\n", "plan_id", "mean", "std_error", "file");
  for (std::size_t i = 0; i < cmp.summaries.size(); ++i) {
    const auto& s = cmp.summaries[i];
    fmt::print(out, "{:<8}{:<22}{:<22}{}{}\n", i, format_real(s.mean), format_real(s.std_error),
               cfg.plan_files[i], i == cmp.best ? "  <- minimum" : "");
    summaries.add_row({std::to_string(i), format_real(s.mean), format_real(s.std_error)});
  }
  fmt::print(out, "pairwise differences (mean_a - mean_b, 99% CI)\n");
  for (const auto& p : cmp.pairs) {
    fmt::print(out, "{} - {}: {} [{}, {}]{}\n", p.plan_a, p.plan_b, format_real(p.diff),
               format_real(p.ci_lo), format_real(p.ci_hi),
               p.excludes_zero() ? "" : "  (CI contains 0)");
    pairs.add_row({std::to_string(p.plan_a), std::to_string(p.plan_b), format_real(p.diff),
                   format_real(p.ci_lo), format_real(p.ci_hi)});
  }
  fmt::print(out, "empirical minimizer: plan {}\n", cmp.best);
  if (!cfg.out.empty()) {
    summaries.write(cfg.out);
  }
  if (!cfg.pairs_out.empty()) {
    pairs.write(cfg.pairs_out);
  }
}

void cmd_plan(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.workers == 0) {
    throw InvalidArgument("--workers is required");
  }
  const std::size_t b = cfg.batches.value();
  const DatasetSpec dataset(cfg.num_samples());
  BatchingPlan batching = cfg.shingle_size ? make_shingled_batches(dataset, b, *cfg.shingle_size)
                                           : make_nonoverlapping_batches(dataset, b);
  AssignmentPlan assignment = [&] {
    if (!cfg.assign.empty()) {
      if (cfg.assign.size() != cfg.workers) {
        throw InvalidArgument(fmt::format("--assign lists {} workers but --workers is {}",
                                          cfg.assign.size(), cfg.workers));
      }
      return explicit_assignment(batching, cfg.assign);
    }
    return balanced_assignment(batching, cfg.workers);
  }();
  const ReplicationPlan plan{std::move(batching), std::move(assignment)};
  if (cfg.out.empty()) {
    out << plan_to_json(plan);
  } else {
    save_plan_file(plan, cfg.out);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Redundancy planning for master-worker computing with stragglers", "redplan"};
  app.require_subcommand(1);
  ExperimentConfig cfg;
  std::vector<Command> commands;

  {
    auto* sub = app.add_subcommand("analyze", "Closed-form completion mean/variance for one B");
    add_system_options(sub, cfg, true);
    add_distribution_options(sub, cfg, false);
    sub->add_option("--batches", cfg.batches, "Number of batches B")->required();
    sub->add_option("--out", cfg.out, "Append a CSV row to this file");
    commands.push_back({sub, [&] { cmd_analyze(cfg, out); }});
  }
  {
    auto* sub = app.add_subcommand("sweep", "Closed-form statistics over all feasible B");
    add_system_options(sub, cfg, true);
    add_distribution_options(sub, cfg, true);
    sub->add_option("--b-min", cfg.b_min, "Smallest B to include");
    sub->add_option("--b-max", cfg.b_max, "Largest B to include");
    sub->add_option("--out", cfg.out, "Write the CSV table here instead of stdout");
    sub->add_option("--svg", cfg.svg, "Also write an SVG line chart of the mean");
    commands.push_back({sub, [&] { cmd_sweep(cfg, out); }});
  }
  {
    auto* sub = app.add_subcommand("optimize", "Best B for the mean or variance objective");
    add_system_options(sub, cfg, true);
    add_distribution_options(sub, cfg, false);
    sub->add_option("--objective", cfg.objective, "Objective to minimise")
        ->check(CLI::IsMember({"mean", "variance"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "Write the sweep CSV here instead of stdout");
    commands.push_back({sub, [&] { cmd_optimize(cfg, out); }});
  }
  {
    auto* sub = app.add_subcommand("simulate", "Monte Carlo completion time of one plan");
    add_system_options(sub, cfg, false);
    add_distribution_options(sub, cfg, false);
    add_simulation_options(sub, cfg);
    sub->add_option("--batches", cfg.batches, "Balanced non-overlapping plan with B batches");
    sub->add_option("--plan-file", cfg.plan_files, "JSON plan file")->expected(1);
    sub->add_option("--out", cfg.out, "Append a CSV row to this file");
    commands.push_back({sub, [&] { cmd_simulate(cfg, out); }});
  }
  {
    auto* sub = app.add_subcommand("compare", "Compare plans under common random numbers");
    add_distribution_options(sub, cfg, false);
    add_simulation_options(sub, cfg);
    sub->add_option("--plan-file", cfg.plan_files, "JSON plan file (repeat, at least two)");
    sub->add_option("--out", cfg.out, "Per-plan summary CSV");
    sub->add_option("--pairs-out", cfg.pairs_out, "Pairwise difference CSV");
    commands.push_back({sub, [&] { cmd_compare(cfg, out); }});
  }
  {
    auto* sub = app.add_subcommand("plan", "Write a plan file");
    add_system_options(sub, cfg, true);
    sub->add_option("--batches", cfg.batches, "Number of batches")->required();
    sub->add_option("--shingle-size", cfg.shingle_size,
                    "Build cyclic overlapping batches of this size");
    sub->add_option("--assign", cfg.assign, "Explicit worker-to-batch list (default: balanced)");
    sub->add_option("--out", cfg.out, "Output path (default: stdout)");
    commands.push_back({sub, [&] { cmd_plan(cfg, out); }});
  }

  std::vector<const char*> argv{"redplan"};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (const auto& c : commands) {
      if (c.app->parsed()) {
        c.run();
      }
    }
  } catch (const InvalidArgument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::bad_optional_access&) {
    fmt::print(err, "error: a required option is missing\n");
    return kExitUsage;
  } catch (const NumericalError& e) {
    fmt::print(err, "numerical failure: {}\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    fmt::print(err, "internal failure: {}\n", e.what());
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace redplan
