#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rggclique/errors.hpp"
#include "rggclique/harness.hpp"

using namespace rggclique;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.space = SpaceKind::flat_torus;
  c.dim = 1;
  c.n = 300;
  c.target_sn = 30;
  c.p = 0.1;
  c.q = 0.01;
  c.filter = FilterConfig{FilterMethod::clique, 8};
  c.trials = 6;
  c.base_seed = 5;
  return c;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string csv_of(const ExperimentResult& r) {
  std::ostringstream out;
  write_trials_csv(out, r.records);
  return out.str();
}

}  // namespace

TEST_CASE("config round trip and defaults") {
  auto c = small_config();
  c.jaccard_threshold = 0.25;
  c.stats = TrialStats::full;
  const auto text = config_to_json(c).dump();
  const auto back = parse_config(text);
  CHECK(back.defaulted.empty());
  CHECK(config_to_json(back.config).dump() == text);

  const auto minimal = parse_config(R"({"n": 50, "r": 0.1})");
  CHECK(minimal.config.n == 50);
  CHECK(minimal.config.r == 0.1);
  CHECK(minimal.config.trials == 1);
  CHECK(std::find(minimal.defaulted.begin(), minimal.defaulted.end(), "p") != minimal.defaulted.end());
  CHECK(std::find(minimal.defaulted.begin(), minimal.defaulted.end(), "n") == minimal.defaulted.end());
}

TEST_CASE("config rejects malformed input") {
  auto message = [](const char* text) {
    try {
      parse_config(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"n": 50, "r": 0.1, "radius": 2})").find("radius") != std::string::npos);
  CHECK(message(R"({"n": "fifty", "r": 0.1})").find("n") != std::string::npos);
  CHECK_FALSE(message(R"({"n": 50})").empty());
  CHECK_FALSE(message(R"({"n": 50, "r": 0.1, "target_sn": 5})").empty());
  CHECK_FALSE(message(R"({"n": 50, "r": 0.1, "p": 1.5})").empty());
  CHECK_FALSE(message(R"({"n": 50, "r": 0.1, "filter": {"method": "clique", "threshold": 1}})").empty());
  CHECK_FALSE(message("{not json").empty());
}

TEST_CASE("assumption-a gate") {
  auto c = small_config();
  c.dim = 2;
  c.n = 1000;
  c.target_sn = 40;  // s = 0.04 < 0.0898
  const auto regime = resolve_regime(c);
  CHECK_FALSE(regime.assumption_a);
  CHECK(regime.s == doctest::Approx(0.04));
  CHECK(regime.s_min == doctest::Approx(0.08981).epsilon(1e-4));
  try {
    check_assumption_a(c);
    FAIL("expected refusal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_argument);
    CHECK(std::string(e.what()).find("0.0898") != std::string::npos);
  }
  c.override_assumption_a = true;
  CHECK_NOTHROW(check_assumption_a(c));
  c.override_assumption_a = false;
  c.target_sn = 100;
  CHECK(check_assumption_a(c).assumption_a);
}

TEST_CASE("trial seeds are distinct and stable") {
  CHECK(trial_seed(1, 0) == trial_seed(1, 0));
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("noise-free trials are trivial") {
  auto c = small_config();
  c.p = 0;
  c.q = 0;
  c.filter = FilterConfig{FilterMethod::clique, 2};
  c.stats = TrialStats::full;
  c.override_assumption_a = true;
  const auto gap = run_gap_experiment(c);
  for (const auto& r : gap.records) {
    CHECK(r.status == "ok");
    CHECK(r.inserted == 0);
    CHECK(r.bad + r.indeterminate == 0);
    CHECK(r.good == r.edges_observed);
    CHECK_FALSE(r.gap.has_value());
    CHECK(r.edges_kept == r.edges_observed);
  }
  CHECK(gap.summary["gap"]["defined_trials"] == 0);
  CHECK(gap.summary["filter"]["fraction_both"] == 1.0);

  c.jaccard_threshold = 0.0;
  const auto rec = run_recovery_experiment(c);
  for (const auto& r : rec.records) {
    CHECK(r.alpha == 1.0);
    CHECK(r.e1 == true);
    CHECK(r.e2 == true);
    CHECK(r.e3 == true);
    CHECK(r.alpha_jaccard == 1.0);
  }
  CHECK(rec.summary["fraction_alpha_le_3"] == 1.0);
  CHECK(rec.summary["implication_violations"] == 0);
  c.filter.reset();
  CHECK_THROWS_AS(run_recovery_experiment(c), Error);
}

TEST_CASE("results do not depend on the worker count") {
  auto c = small_config();
  c.override_assumption_a = true;
  c.workers = 1;
  const auto one = run_gap_experiment(c);
  c.workers = 5;
  const auto five = run_gap_experiment(c);
  CHECK(csv_of(one) == csv_of(five));
  CHECK(one.summary.dump() != "");
  auto a = one.summary, b = five.summary;
  a["config"].erase("workers");
  b["config"].erase("workers");
  CHECK(a == b);
}

TEST_CASE("summary agrees with trials.csv") {
  auto c = small_config();
  c.override_assumption_a = true;
  c.stats = TrialStats::extremes;
  c.trials = 8;
  c.workers = 4;
  const auto res = run_gap_experiment(c);
  const auto rows = parse_csv(csv_of(res));
  REQUIRE(rows.size() == 9);
  const auto& header = rows[0];
  auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  std::size_t both = 0, defined = 0, holds = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    REQUIRE(row.size() == header.size());
    both += row[col("good_removed")] == "0" && row[col("bad_kept")] == "0";
    if (row[col("gap")] != "na") {
      ++defined;
      holds += std::stoll(row[col("gap")]) > 0;
    }
  }
  CHECK(res.summary["filter"]["fraction_both"].get<double>() == doctest::Approx(both / 8.0));
  CHECK(res.summary["gap"]["defined_trials"].get<std::size_t>() == defined);
  if (defined > 0)
    CHECK(res.summary["gap"]["fraction_holds"].get<double>() ==
          doctest::Approx(static_cast<double>(holds) / defined));
}

TEST_CASE("budget exhaustion marks the trial") {
  auto c = small_config();
  c.override_assumption_a = true;
  c.clique_budget = 1;
  c.trials = 2;
  const auto res = run_gap_experiment(c);
  for (const auto& r : res.records) CHECK(r.status == "budget_exceeded");
  CHECK(res.summary["budget_exceeded"] == 2);
  CHECK(res.summary["completed"] == 0);
}

TEST_CASE("reports and artifacts on disk") {
  const auto dir = fs::temp_directory_path() / "rgc_harness_test";
  fs::remove_all(dir);
  auto c = small_config();
  c.override_assumption_a = true;
  c.trials = 2;
  c.keep_artifacts = true;
  c.out_dir = dir.string();
  const auto res = run_experiment(ExperimentKind::gap, c);
  write_reports(res, dir);
  for (const char* f : {"summary.json", "trials.csv", "timings.csv", "config.json"})
    CHECK(fs::exists(dir / f));
  for (const char* f : {"points.csv", "edges.txt", "cliques.csv", "filtered.txt"})
    CHECK(fs::exists(dir / "artifacts" / "trial_0000" / f));
  std::ifstream cfg(dir / "config.json");
  std::stringstream text;
  text << cfg.rdbuf();
  CHECK(config_to_json(parse_config(text.str()).config) == config_to_json(c));
  fs::remove_all(dir);
}
