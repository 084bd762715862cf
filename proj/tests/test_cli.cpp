#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "redplan/cli.hpp"
#include "redplan/plan_io.hpp"
#include "redplan/report.hpp"

using namespace redplan;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Value printed on the "key   value" line of a command's report.
double field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string k;
    double v;
    if (ls >> k && k == key && ls >> v) {
      return v;
    }
  }
  FAIL("missing field " << key << " in:\n" << text);
  return 0.0;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("redplan_cli_" + std::to_string(counter_++))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

}  // namespace

TEST_CASE("analyze") {
  auto r = run({"analyze", "--workers", "12", "--samples", "12", "--dist", "sexp", "--mu", "1",
                "--delta", "0.2", "--batches", "3"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "mean") == doctest::Approx(2.633333).epsilon(1e-6));

  r = run({"analyze", "--dist", "exp", "--mu", "1", "--workers", "4", "--samples", "4", "--batches", "1"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "mean") == doctest::Approx(1.0));

  r = run({"analyze", "--workers", "12", "--batches", "5"});
  CHECK(r.code == 2);
  CHECK(r.err.find("5 does not divide 12") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"analyze", "--batches", "1"}).code == 2);
  CHECK(run({"analyze", "--workers", "4", "--batches", "1", "--dist", "gamma"}).code == 2);
  CHECK(run({"analyze", "--workers", "4", "--batches", "1", "--mu", "-1"}).code == 2);
  CHECK(run({"analyze", "--workers", "4", "--batches", "1", "--delta", "0.5"}).code == 2);
  CHECK(run({"simulate", "--workers", "4", "--batches", "2", "--trials", "0"}).code == 2);
  CHECK(run({"simulate", "--workers", "4"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("analyze appends CSV rows under a stable header") {
  TempDir dir;
  const auto csv = dir / "analyze.csv";
  REQUIRE(run({"analyze", "--workers", "4", "--batches", "1", "--out", csv.string()}).code == 0);
  REQUIRE(run({"analyze", "--workers", "4", "--batches", "2", "--out", csv.string()}).code == 0);
  CHECK(slurp(csv) == "B,mean,variance\n1,1,1\n2,1.5,1.25\n");
}

TEST_CASE("sweep") {
  SUBCASE("three shifted-exponential curves have argmin 1, 3 and 12") {
    TempDir dir;
    const auto csv = dir / "sweep.csv";
    const auto svg = dir / "sweep.svg";
    const auto r = run({"sweep", "--workers", "12", "--dist", "sexp", "--mu", "1", "--delta",
                        "0.001", "0.2", "10", "--out", csv.string(), "--svg", svg.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("delta=0.001: argmin B=1 ") != std::string::npos);
    CHECK(r.out.find("delta=0.2: argmin B=3 ") != std::string::npos);
    CHECK(r.out.find("delta=10: argmin B=12 ") != std::string::npos);
    const std::string text = slurp(csv);
    CHECK(text.rfind("B,mean,variance,mu,delta\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 3 * 6);
    const std::string chart = slurp(svg);
    CHECK(chart.rfind("<svg", 0) == 0);
    CHECK(chart.find("<polyline") != std::string::npos);
  }

  SUBCASE("exponential curve is increasing") {
    const auto r = run({"sweep", "--workers", "12", "--dist", "exp", "--mu", "1"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "B,mean,variance");
    double prev = 0.0;
    int rows = 0;
    while (std::getline(in, line)) {
      const double mean = std::stod(line.substr(line.find(',') + 1));
      CHECK(mean > prev);
      prev = mean;
      ++rows;
    }
    CHECK(rows == 6);
  }

  SUBCASE("single feasible B") {
    const auto r = run({"sweep", "--workers", "7", "--samples", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "B,mean,variance\n1,0.14285714285714285,0.02040816326530612\n");
  }

  SUBCASE("batch range filter and mismatched parameter lists") {
    auto r = run({"sweep", "--workers", "12", "--b-min", "3", "--b-max", "6"});
    REQUIRE(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
    CHECK(run({"sweep", "--workers", "12", "--b-min", "7", "--b-max", "11"}).code == 2);
    CHECK(run({"sweep", "--workers", "12", "--dist", "sexp", "--mu", "1", "2", "--delta", "1", "2", "3"}).code == 2);
  }
}

TEST_CASE("optimize") {
  auto r = run({"optimize", "--dist", "sexp", "--mu", "1", "--delta", "10", "--workers", "12",
                "--objective", "mean"});
  REQUIRE(r.code == 0);
  CHECK(field(r.out, "best_B") == 12);
  CHECK(r.out.find("B,mean,variance\n") != std::string::npos);

  r = run({"optimize", "--dist", "sexp", "--mu", "1", "--delta", "10", "--workers", "12",
           "--objective", "variance"});
  CHECK(field(r.out, "best_B") == 1);

  r = run({"optimize", "--dist", "exp", "--mu", "2", "--workers", "8", "--samples", "8"});
  CHECK(field(r.out, "best_B") == 1);

  CHECK(run({"optimize", "--workers", "8", "--objective", "median"}).code == 2);
}

TEST_CASE("simulate") {
  TempDir dir;
  const std::vector<std::string> args{"simulate", "--dist", "exp", "--mu", "1", "--workers", "12",
                                      "--batches", "3", "--trials", "1000000", "--seed", "42"};
  const auto a = run(args);
  REQUIRE(a.code == 0);
  CHECK(std::abs(field(a.out, "mean") - 11.0 / 6.0) <= 3.0 * field(a.out, "std_error"));
  CHECK(field(a.out, "seed") == 42);

  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(run(args).out == a.out);
  CHECK(run(threaded).out == a.out);

  const auto csv = dir / "sim.csv";
  auto with_out = args;
  with_out.insert(with_out.end(), {"--out", csv.string()});
  REQUIRE(run(with_out).code == 0);
  REQUIRE(run(with_out).code == 0);
  const std::string text = slurp(csv);
  CHECK(text.rfind("B,trials,seed,mean,variance,std_error\n3,1000000,42,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);

  SUBCASE("plan files") {
    const auto good = dir / "good.json";
    std::ofstream(good) << R"({"num_samples": 4, "batches": [[0,1],[2,3]], "worker_to_batch": [0,0,0,1]})";
    const auto r = run({"simulate", "--plan-file", good.string(), "--trials", "1000"});
    CHECK(r.code == 0);
    CHECK(field(r.out, "B") == 2);

    const auto uncovered = dir / "uncovered.json";
    std::ofstream(uncovered) << R"({"num_samples": 4, "batches": [[0,1],[2,3]], "worker_to_batch": [0,0,0,0]})";
    const auto bad = run({"simulate", "--plan-file", uncovered.string()});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("batches [1]") != std::string::npos);

    const auto garbage = dir / "garbage.json";
    std::ofstream(garbage) << "{\"num_samples\": 4,";
    CHECK(run({"simulate", "--plan-file", garbage.string()}).code == 2);
    CHECK(run({"simulate", "--plan-file", (dir / "missing.json").string()}).code == 2);
  }
}

TEST_CASE("compare") {
  TempDir dir;
  const auto balanced = dir / "balanced.json";
  const auto unbalanced = dir / "unbalanced.json";
  const auto shingled = dir / "shingled.json";
  REQUIRE(run({"plan", "--workers", "4", "--batches", "2", "--out", balanced.string()}).code == 0);
  REQUIRE(run({"plan", "--workers", "4", "--batches", "2", "--assign", "0", "0", "0", "1", "--out",
               unbalanced.string()}).code == 0);
  REQUIRE(run({"plan", "--workers", "4", "--batches", "4", "--shingle-size", "2", "--out",
               shingled.string()}).code == 0);
  CHECK(load_plan_file(shingled).batching.kind() == BatchKind::kOverlapping);

  const auto summary = dir / "cmp.csv";
  const auto pairs = dir / "pairs.csv";
  const auto r = run({"compare", "--plan-file", balanced.string(), "--plan-file", unbalanced.string(),
                      "--plan-file", shingled.string(), "--trials", "200000", "--seed", "4",
                      "--out", summary.string(), "--pairs-out", pairs.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("empirical minimizer: plan 0") != std::string::npos);
  CHECK(r.out.find("CI contains 0") == std::string::npos);
  CHECK(slurp(summary).rfind("plan_id,mean,std_error\n0,", 0) == 0);
  CHECK(slurp(pairs).rfind("plan_a,plan_b,diff,ci_lo,ci_hi\n0,1,-", 0) == 0);

  const auto self = run({"compare", "--plan-file", balanced.string(), "--plan-file", balanced.string(),
                         "--trials", "1000", "--pairs-out", pairs.string()});
  REQUIRE(self.code == 0);
  CHECK(slurp(pairs) == "plan_a,plan_b,diff,ci_lo,ci_hi\n0,1,0,0,0\n");

  CHECK(run({"compare", "--plan-file", balanced.string()}).code == 2);
}

TEST_CASE("plan command") {
  const auto r = run({"plan", "--workers", "4", "--samples", "6", "--batches", "2"});
  REQUIRE(r.code == 0);
  const auto plan = parse_plan(r.out);
  CHECK(plan.batching.batches() == std::vector<Batch>{{0, 1, 2}, {3, 4, 5}});
  CHECK(plan.assignment.worker_to_batch() == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK(run({"plan", "--workers", "4", "--batches", "2", "--assign", "0", "0"}).code == 2);
  CHECK(run({"plan", "--workers", "6", "--batches", "3", "--shingle-size", "2"}).code == 2);
}

TEST_CASE("csv and svg helpers") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(2.0) == "2");
  CHECK(format_real(1e-20) == "1e-20");
  CsvTable t({"a", "b"});
  t.add_row({"1", "2"});
  CHECK_THROWS(t.add_row({"1"}));
  CHECK(t.to_string() == "a,b\n1,2\n");

  TempDir dir;
  t.append(dir / "t.csv");
  t.append(dir / "t.csv");
  CHECK(slurp(dir / "t.csv") == "a,b\n1,2\n1,2\n");
  CHECK_THROWS(CsvTable({"x"}).append(dir / "t.csv"));

  const std::string svg = render_line_chart({{"a<b", {{1, 2}, {2, 3}}}}, {"t", "x", "y"});
  CHECK(svg.find("a&lt;b") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK_NOTHROW(render_line_chart({}, {"empty", "x", "y"}));
}
