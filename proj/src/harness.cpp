#include "rggclique/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "parallel.hpp"
#include "rggclique/bounds.hpp"
#include "rggclique/errors.hpp"
#include "rggclique/graph_metrics.hpp"
#include "rggclique/graphgen.hpp"
#include "rggclique/rng.hpp"

namespace rggclique {

using ojson = nlohmann::ordered_json;

std::string_view to_string(ExperimentKind kind) {
  return kind == ExperimentKind::gap ? "gap" : "recovery";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  if (text == "gap") return ExperimentKind::gap;
  if (text == "recovery") return ExperimentKind::recovery;
  throw invalid_argument("unknown experiment '" + std::string(text) + "'");
}

std::string_view to_string(TrialStats stats) {
  switch (stats) {
    case TrialStats::none: return "none";
    case TrialStats::full: return "full";
    case TrialStats::extremes: return "extremes";
  }
  return "none";
}

TrialStats parse_trial_stats(std::string_view text) {
  if (text == "none") return TrialStats::none;
  if (text == "full") return TrialStats::full;
  if (text == "extremes") return TrialStats::extremes;
  throw invalid_argument("unknown stats mode '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& why) {
    throw invalid_argument("config field '" + field + "': " + why);
  };
  if (dim < 1) bad("dim", "must be at least 1");
  if (n < 2) bad("n", "must be at least 2");
  if (r.has_value() == target_sn.has_value()) {
    bad(r ? "r" : "target_sn", "exactly one of r and target_sn must be given");
  }
  if (r && !(*r > 0.0)) bad("r", "must be positive");
  if (target_sn && !(*target_sn > 0.0)) bad("target_sn", "must be positive");
  if (!(p >= 0.0 && p <= 1.0)) bad("p", "must lie in [0, 1]");
  if (!(q >= 0.0 && q <= 1.0)) bad("q", "must lie in [0, 1]");
  if (trials < 1) bad("trials", "must be at least 1");
  if (workers < 1) bad("workers", "must be at least 1");
  if (clique_budget < 1) bad("clique_budget", "must be at least 1");
  if (filter) {
    try {
      filter->validate();
    } catch (const Error& e) {
      bad("filter", e.what());
    }
  }
  if (jaccard_threshold && !(*jaccard_threshold >= 0.0 && *jaccard_threshold <= 1.0)) {
    bad("jaccard_threshold", "must lie in [0, 1]");
  }
}

namespace {

const std::set<std::string> kConfigKeys = {
    "space", "dim", "n", "r", "target_sn", "p", "q", "filter", "jaccard_threshold",
    "stats", "trials", "base_seed", "clique_budget", "workers", "override_assumption_a",
    "keep_artifacts", "out_dir"};

template <class T>
T field(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

LoadedConfig parse_config(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::parse, "config must be a JSON object");
  for (const auto& item : j.items()) {
    if (!kConfigKeys.contains(item.key())) {
      throw Error(ErrorKind::parse, "config field '" + item.key() + "': unknown key");
    }
  }

  LoadedConfig loaded;
  auto& c = loaded.config;
  auto has = [&](const char* key) {
    const bool present = j.contains(key) && !j.at(key).is_null();
    if (!present) loaded.defaulted.emplace_back(key);
    return present;
  };
  try {
    if (has("space")) c.space = parse_space_kind(field<std::string>(j, "space"));
    if (has("dim")) c.dim = field<std::size_t>(j, "dim");
    if (has("n")) c.n = field<std::size_t>(j, "n");
    if (has("r")) c.r = field<double>(j, "r");
    if (has("target_sn")) c.target_sn = field<double>(j, "target_sn");
    if (has("p")) c.p = field<double>(j, "p");
    if (has("q")) c.q = field<double>(j, "q");
    if (has("filter")) {
      const auto& f = j.at("filter");
      FilterConfig fc;
      fc.method = parse_filter_method(field<std::string>(f, "method"));
      fc.threshold = field<double>(f, "threshold");
      c.filter = fc;
    }
    if (has("jaccard_threshold")) c.jaccard_threshold = field<double>(j, "jaccard_threshold");
    if (has("stats")) c.stats = parse_trial_stats(field<std::string>(j, "stats"));
    if (has("trials")) c.trials = field<std::size_t>(j, "trials");
    if (has("base_seed")) c.base_seed = field<std::uint64_t>(j, "base_seed");
    if (has("clique_budget")) c.clique_budget = field<std::uint64_t>(j, "clique_budget");
    if (has("workers")) c.workers = field<unsigned>(j, "workers");
    if (has("override_assumption_a")) {
      c.override_assumption_a = field<bool>(j, "override_assumption_a");
    }
    if (has("keep_artifacts")) c.keep_artifacts = field<bool>(j, "keep_artifacts");
    if (has("out_dir")) c.out_dir = field<std::string>(j, "out_dir");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse) throw;
    throw Error(ErrorKind::parse, e.what());
  }
  // r and target_sn are alternatives; only the pair missing is a default.
  std::erase_if(loaded.defaulted, [&](const std::string& k) {
    return (k == "r" && c.target_sn) || (k == "target_sn" && c.r);
  });
  c.validate();
  return loaded;
}

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ojson config_to_json(const ExperimentConfig& c) {
  ojson j;
  j["space"] = std::string(to_string(c.space));
  j["dim"] = c.dim;
  j["n"] = c.n;
  j["r"] = c.r ? ojson(*c.r) : ojson(nullptr);
  j["target_sn"] = c.target_sn ? ojson(*c.target_sn) : ojson(nullptr);
  j["p"] = c.p;
  j["q"] = c.q;
  if (c.filter) {
    j["filter"] = {{"method", std::string(to_string(c.filter->method))},
                   {"threshold", c.filter->threshold}};
  } else {
    j["filter"] = nullptr;
  }
  j["jaccard_threshold"] = c.jaccard_threshold ? ojson(*c.jaccard_threshold) : ojson(nullptr);
  j["stats"] = std::string(to_string(c.stats));
  j["trials"] = c.trials;
  j["base_seed"] = c.base_seed;
  j["clique_budget"] = c.clique_budget;
  j["workers"] = c.workers;
  j["override_assumption_a"] = c.override_assumption_a;
  j["keep_artifacts"] = c.keep_artifacts;
  j["out_dir"] = c.out_dir;
  return j;
}

Regime resolve_regime(const ExperimentConfig& config) {
  config.validate();
  const auto space = MetricSpace::make(config.space, config.dim);
  Regime regime;
  regime.r = config.r ? *config.r : radius_for_target_sn(space, config.n, *config.target_sn);
  const auto mass = ball_mass_bounds(space, regime.r);
  regime.s = mass.s;
  regime.rho = mass.rho;
  regime.s_min = assumption_a_s_min(static_cast<double>(config.n));
  regime.assumption_a = assumption_a_holds(mass, config.n);
  return regime;
}

Regime check_assumption_a(const ExperimentConfig& config) {
  const auto regime = resolve_regime(config);
  if (!regime.assumption_a && !config.override_assumption_a) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "Assumption-A fails: s = %.6g < 13 ln n / n = %.6g (n = %zu); "
                  "set override_assumption_a to run anyway",
                  regime.s, regime.s_min, config.n);
    throw invalid_argument(buf);
  }
  return regime;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial) {
  return derive_seed(base_seed, trial);
}

namespace {

constexpr std::uint64_t kCloudStream = 1;
constexpr std::uint64_t kPerturbStream = 2;

void write_file(const std::filesystem::path& path, auto&& writer) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  writer(out);
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

TrialRecord run_trial(ExperimentKind kind, const ExperimentConfig& config,
                      const Regime& regime, std::size_t index, unsigned inner_workers) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial = index;
  rec.seed = trial_seed(config.base_seed, index);

  const auto space = MetricSpace::make(config.space, config.dim);
  auto truth = std::make_shared<const GeometricGraph>(
      build_rgg(sample_points(space, config.n, derive_seed(rec.seed, kCloudStream)), regime.r));
  const auto pg = perturb(truth, config.p, config.q, derive_seed(rec.seed, kPerturbStream));
  const auto labels = classify_edges(pg);

  rec.edges_observed = pg.observed.edge_count();
  for (auto prov : pg.provenance) {
    (prov == Provenance::inserted ? rec.inserted : rec.kept_original)++;
  }
  const auto counts = count_labels(labels);
  rec.good = counts.good;
  rec.bad = counts.bad;
  rec.indeterminate = counts.indeterminate;

  std::filesystem::path artifacts;
  if (config.keep_artifacts) {
    char name[32];
    std::snprintf(name, sizeof name, "trial_%04zu", index);
    artifacts = std::filesystem::path(config.out_dir) / "artifacts" / name;
    std::filesystem::create_directories(artifacts);
    write_file(artifacts / "points.csv", [&](std::ostream& o) { write_point_cloud(o, truth->cloud); });
    write_file(artifacts / "edges.txt", [&](std::ostream& o) { write_edge_list(o, pg, labels); });
  }

  try {
    if (kind == ExperimentKind::gap && config.stats != TrialStats::none) {
      const auto stats = all_edge_clique_numbers(
          pg, labels,
          {config.stats == TrialStats::full ? StatsMode::full : StatsMode::extremes,
           config.clique_budget, inner_workers});
      rec.omega = stats.by_class;
      const auto& good = stats.of(EdgeLabel::good);
      const auto& bad = stats.of(EdgeLabel::bad);
      if (good.min && bad.max) {
        rec.gap = static_cast<long long>(*good.min) - static_cast<long long>(*bad.max);
      }
      if (config.keep_artifacts) {
        write_file(artifacts / "cliques.csv", [&](std::ostream& o) { write_clique_csv(o, stats); });
      }
    }

    if (config.filter) {
      const auto fg = apply_filter(pg, *config.filter,
                                   {false, config.clique_budget, inner_workers});
      rec.filtered = true;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool kept = fg.kept[i];
        rec.edges_kept += kept;
        switch (labels[i]) {
          case EdgeLabel::good: rec.good_removed += !kept; break;
          case EdgeLabel::bad: rec.bad_kept += kept; break;
          case EdgeLabel::indeterminate:
            (kept ? rec.indeterminate_kept : rec.indeterminate_removed)++;
            break;
        }
      }
      if (config.keep_artifacts) {
        write_file(artifacts / "filtered.txt", [&](std::ostream& o) { write_filtered_graph(o, fg); });
      }
      if (kind == ExperimentKind::recovery) {
        const auto rep = recovery_stretch(*truth, fg, labels, inner_workers);
        rec.alpha = rep.approx.alpha;
        rec.connectivity_mismatch = rep.approx.connectivity_mismatch;
        rec.e1 = rep.e1;
        rec.e2 = rep.e2;
        rec.e3 = rep.e3;
        if (config.jaccard_threshold) {
          const auto jf = jaccard_filter(pg, *config.jaccard_threshold);
          rec.alpha_jaccard = recovery_stretch(*truth, jf, labels, inner_workers).approx.alpha;
        }
      }
    }
  } catch (const BudgetExceeded&) {
    rec.status = "budget_exceeded";
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

ExperimentResult run(ExperimentKind kind, const ExperimentConfig& config) {
  if (kind == ExperimentKind::recovery && !config.filter) {
    throw invalid_argument("config field 'filter': recovery experiments need a filter");
  }
  ExperimentResult result;
  result.kind = kind;
  result.config = config;
  result.regime = check_assumption_a(config);
  result.records.resize(config.trials);
  const unsigned outer =
      static_cast<unsigned>(std::min<std::size_t>(config.workers, config.trials));
  const unsigned inner = std::max(1u, config.workers / std::max(1u, outer));
  detail::parallel_for(config.trials, outer, [&](std::size_t i) {
    result.records[i] = run_trial(kind, config, result.regime, i, inner);
  });
  result.summary = summarize(kind, config, result.regime, result.records);
  return result;
}

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ojson number_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? ojson("inf") : ojson("-inf");
  return x;
}

std::optional<double> median(std::vector<double> xs) {
  if (xs.empty()) return std::nullopt;
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  if (xs.size() % 2 == 1) return xs[m];
  if (std::isinf(xs[m])) return xs[m];
  return (xs[m - 1] + xs[m]) / 2.0;
}

ojson fraction(std::size_t hits, std::size_t total) {
  if (total == 0) return nullptr;
  return static_cast<double>(hits) / static_cast<double>(total);
}

ojson distribution(const std::vector<double>& xs) {
  if (xs.empty()) return nullptr;
  ojson j;
  j["count"] = xs.size();
  j["median"] = number_or_inf(*median(xs));
  j["min"] = number_or_inf(*std::min_element(xs.begin(), xs.end()));
  j["max"] = number_or_inf(*std::max_element(xs.begin(), xs.end()));
  return j;
}

}  // namespace

ExperimentResult run_gap_experiment(const ExperimentConfig& config) {
  return run(ExperimentKind::gap, config);
}

ExperimentResult run_recovery_experiment(const ExperimentConfig& config) {
  return run(ExperimentKind::recovery, config);
}

ExperimentResult run_experiment(ExperimentKind kind, const ExperimentConfig& config) {
  return run(kind, config);
}

ojson summarize(ExperimentKind kind, const ExperimentConfig& config, const Regime& regime,
                const std::vector<TrialRecord>& records) {
  ojson j;
  j["experiment"] = std::string(to_string(kind));
  j["config"] = config_to_json(config);
  const double sn = regime.s * static_cast<double>(config.n);
  j["regime"] = {{"r", regime.r},
                 {"s", regime.s},
                 {"rho", regime.rho},
                 {"sn", sn},
                 {"s_min", regime.s_min},
                 {"assumption_a", regime.assumption_a},
                 {"override", config.override_assumption_a}};
  j["policy"] = "high-probability claims are checked as a fraction of all trials; "
                "failed trials count against every fraction";

  const std::size_t total = records.size();
  std::size_t completed = 0;
  for (const auto& r : records) completed += r.status == "ok";
  j["trials"] = total;
  j["completed"] = completed;
  j["budget_exceeded"] = total - completed;

  if (config.filter) {
    std::size_t keep_good = 0, drop_bad = 0, both = 0, degenerate = 0;
    for (const auto& r : records) {
      if (r.status != "ok" || !r.filtered) continue;
      keep_good += r.good_removed == 0;
      drop_bad += r.bad_kept == 0;
      both += r.good_removed == 0 && r.bad_kept == 0;
      degenerate += r.edges_kept == 0 && r.edges_observed > 0;
    }
    j["filter"] = {{"method", std::string(to_string(config.filter->method))},
                   {"threshold", config.filter->threshold},
                   {"fraction_keeps_all_good", fraction(keep_good, total)},
                   {"fraction_deletes_all_bad", fraction(drop_bad, total)},
                   {"fraction_both", fraction(both, total)},
                   {"degenerate_trials", degenerate}};
  }

  if (kind == ExperimentKind::gap) {
    double bound = sn / 4.0;
    std::string bound_kind = "sn/4";
    if (config.p > 0.0 && config.p < 1.0 && sn > 1.0) {
      bound = tau_good_edge_bound(config.p, regime.s, static_cast<double>(config.n));
      bound_kind = "(2/3) ln(sn) / ln(1/(1-p))";
    }
    std::size_t meets = 0, defined = 0, holds = 0;
    std::vector<double> gaps;
    for (const auto& r : records) {
      if (r.status != "ok") continue;
      const auto& good = r.omega[static_cast<std::size_t>(EdgeLabel::good)];
      if (good.min && static_cast<double>(*good.min) >= bound) ++meets;
      if (r.gap) {
        ++defined;
        holds += *r.gap > 0;
        gaps.push_back(static_cast<double>(*r.gap));
      }
    }
    if (config.stats != TrialStats::none) {
      j["good_bound"] = {{"value", bound},
                         {"kind", bound_kind},
                         {"fraction_good_min_meets_bound", fraction(meets, total)}};
      j["gap"] = {{"defined_trials", defined},
                  {"fraction_holds", fraction(holds, defined)},
                  {"distribution", distribution(gaps)}};
    }
  } else {
    std::size_t within = 0, events = 0, violations = 0, within_j = 0;
    std::vector<double> alphas, alphas_j;
    for (const auto& r : records) {
      if (r.status != "ok" || !r.alpha) continue;
      alphas.push_back(*r.alpha);
      within += *r.alpha <= 3.0;
      const bool all = *r.e1 && *r.e2 && *r.e3;
      events += all;
      violations += all && !(*r.alpha <= 3.0);
      if (r.alpha_jaccard) {
        alphas_j.push_back(*r.alpha_jaccard);
        within_j += *r.alpha_jaccard <= 3.0;
      }
    }
    j["fraction_alpha_le_3"] = fraction(within, total);
    j["fraction_events_all"] = fraction(events, total);
    j["implication_violations"] = violations;
    j["alpha"] = distribution(alphas);
    if (config.jaccard_threshold) {
      j["jaccard"] = {{"threshold", *config.jaccard_threshold},
                      {"fraction_alpha_le_3", fraction(within_j, total)},
                      {"alpha", distribution(alphas_j)}};
    }
  }
  return j;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "trial,seed,status,edges,kept_original,inserted,good,bad,indeterminate";
  for (auto label : kAllLabels) {
    const auto name = std::string(to_string(label));
    out << ',' << name << "_min," << name << "_max," << name << "_mean";
  }
  out << ",gap,edges_kept,good_removed,bad_kept,indeterminate_kept,indeterminate_removed"
         ",alpha,mismatch,e1,e2,e3,alpha_jaccard\n";
  auto opt_size = [](const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string("na");
  };
  auto opt_bool = [](const std::optional<bool>& v) {
    return v ? std::string(*v ? "1" : "0") : std::string("na");
  };
  for (const auto& r : records) {
    out << r.trial << ',' << r.seed << ',' << r.status << ',' << r.edges_observed << ','
        << r.kept_original << ',' << r.inserted << ',' << r.good << ',' << r.bad << ','
        << r.indeterminate;
    for (const auto& c : r.omega) {
      out << ',' << opt_size(c.min) << ',' << opt_size(c.max) << ','
          << (c.mean ? fmt(*c.mean) : "na");
    }
    out << ',' << (r.gap ? std::to_string(*r.gap) : "na");
    if (r.filtered) {
      out << ',' << r.edges_kept << ',' << r.good_removed << ',' << r.bad_kept << ','
          << r.indeterminate_kept << ',' << r.indeterminate_removed;
    } else {
      out << ",na,na,na,na,na";
    }
    out << ',' << (r.alpha ? fmt(*r.alpha) : "na") << ','
        << (r.alpha ? (r.connectivity_mismatch ? "1" : "0") : "na") << ',' << opt_bool(r.e1)
        << ',' << opt_bool(r.e2) << ',' << opt_bool(r.e3) << ','
        << (r.alpha_jaccard ? fmt(*r.alpha_jaccard) : "na") << '\n';
  }
}

void write_reports(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "summary.json",
             [&](std::ostream& o) { o << result.summary.dump(2) << '\n'; });
  write_file(dir / "trials.csv", [&](std::ostream& o) { write_trials_csv(o, result.records); });
  write_file(dir / "timings.csv", [&](std::ostream& o) {
    o << "trial,seconds\n";
    for (const auto& r : result.records) o << r.trial << ',' << fmt(r.seconds) << '\n';
  });
  write_file(dir / "config.json",
             [&](std::ostream& o) { o << config_to_json(result.config).dump(2) << '\n'; });
}

}  // namespace rggclique
