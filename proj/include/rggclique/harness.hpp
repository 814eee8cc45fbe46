#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rggclique/cliques.hpp"
#include "rggclique/filtering.hpp"
#include "rggclique/metric_space.hpp"

namespace rggclique {

enum class ExperimentKind { gap, recovery };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

// Statistics computed per trial in gap experiments; `none` skips the
// per-edge omega pass (filter outcomes are still recorded).
enum class TrialStats { none, full, extremes };

std::string_view to_string(TrialStats stats);
TrialStats parse_trial_stats(std::string_view text);

struct ExperimentConfig {
  SpaceKind space = SpaceKind::flat_torus;
  std::size_t dim = 2;
  std::size_t n = 100;
  // Exactly one of r and target_sn is set.
  std::optional<double> r;
  std::optional<double> target_sn;
  double p = 0.0;
  double q = 0.0;
  std::optional<FilterConfig> filter;
  // Jaccard threshold for the baseline arm of recovery experiments.
  std::optional<double> jaccard_threshold;
  TrialStats stats = TrialStats::extremes;
  std::size_t trials = 1;
  std::uint64_t base_seed = 1;
  std::uint64_t clique_budget = kDefaultCliqueBudget;
  unsigned workers = 1;
  bool override_assumption_a = false;
  bool keep_artifacts = false;
  std::string out_dir = "out";

  // Throws invalid_argument naming the offending field.
  void validate() const;
};

struct LoadedConfig {
  ExperimentConfig config;
  std::vector<std::string> defaulted;  // fields absent from the file
};

// Strict JSON: unknown keys and wrong types are parse errors naming the field.
LoadedConfig parse_config(std::string_view json_text);
LoadedConfig load_config(const std::filesystem::path& path);
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

// Radius, mass bounds, and the Assumption-A verdict for a config.
struct Regime {
  double r = 0.0;
  double s = 0.0;
  double rho = 1.0;
  double s_min = 0.0;
  bool assumption_a = false;
};
Regime resolve_regime(const ExperimentConfig& config);

// Resolves the regime and refuses configs that violate Assumption-A unless
// the override is set.
Regime check_assumption_a(const ExperimentConfig& config);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";  // or "budget_exceeded"
  std::size_t edges_observed = 0;
  std::size_t kept_original = 0;
  std::size_t inserted = 0;
  std::size_t good = 0;
  std::size_t bad = 0;
  std::size_t indeterminate = 0;
  std::array<ClassStats, 3> omega{};  // by EdgeLabel
  std::optional<long long> gap;       // min good omega - max bad omega
  // Filter outcomes, when a filter is configured.
  bool filtered = false;
  std::size_t good_removed = 0;
  std::size_t bad_kept = 0;
  std::size_t indeterminate_kept = 0;
  std::size_t indeterminate_removed = 0;
  std::size_t edges_kept = 0;
  // Recovery experiments only.
  std::optional<double> alpha;
  bool connectivity_mismatch = false;
  std::optional<bool> e1, e2, e3;
  std::optional<double> alpha_jaccard;
  double seconds = 0.0;  // wall clock, kept out of trials.csv
};

struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::gap;
  ExperimentConfig config;
  Regime regime;
  std::vector<TrialRecord> records;
  nlohmann::ordered_json summary;
};

// Per trial i: seed = derive_seed(base_seed, i); the cloud and the
// perturbation draw from independent sub-streams of that seed.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial);

ExperimentResult run_gap_experiment(const ExperimentConfig& config);
ExperimentResult run_recovery_experiment(const ExperimentConfig& config);
ExperimentResult run_experiment(ExperimentKind kind, const ExperimentConfig& config);

// Summary computed from records alone (also used to check trials.csv).
nlohmann::ordered_json summarize(ExperimentKind kind, const ExperimentConfig& config,
                                 const Regime& regime,
                                 const std::vector<TrialRecord>& records);

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);

// summary.json, trials.csv, timings.csv and config.json under `dir`.
void write_reports(const ExperimentResult& result, const std::filesystem::path& dir);

}  // namespace rggclique
