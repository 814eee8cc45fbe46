// Command-line front end. Everything goes through the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rggclique/rggclique.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Failure {
  int code;
  std::string message;
};

int exit_code(rgc_status status) {
  switch (status) {
    case RGC_OK: return 0;
    case RGC_ERR_INVALID_ARGUMENT:
    case RGC_ERR_PARSE: return 2;
    case RGC_ERR_BUDGET_EXCEEDED:
    case RGC_ERR_INFEASIBLE: return 3;
    default: return 1;
  }
}

void check(rgc_status status) {
  if (status != RGC_OK) throw Failure{exit_code(status), rgc_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Cloud = std::unique_ptr<rgc_cloud, Deleter<rgc_cloud, rgc_cloud_free>>;
using Truth = std::unique_ptr<rgc_truth, Deleter<rgc_truth, rgc_truth_free>>;
using Perturbed = std::unique_ptr<rgc_perturbed, Deleter<rgc_perturbed, rgc_perturbed_free>>;
using Filtered = std::unique_ptr<rgc_filtered, Deleter<rgc_filtered, rgc_filtered_free>>;
using Config = std::unique_ptr<rgc_config, Deleter<rgc_config, rgc_config_free>>;

std::string take(char* s) {
  std::string out = s ? s : "";
  rgc_string_free(s);
  return out;
}

// Optional settings shared by the file-based subcommands; --config fills the
// ones not given on the command line.
struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::string out = ".";
};

json load_config_json(const std::string& path) {
  rgc_config* raw = nullptr;
  check(rgc_config_load(path.c_str(), &raw));
  Config cfg(raw);
  char* text = nullptr;
  check(rgc_config_to_json(cfg.get(), &text));
  return json::parse(take(text));
}

fs::path out_file(const Common& c, const char* name) {
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) throw Failure{1, "cannot create " + c.out + ": " + ec.message()};
  return fs::path(c.out) / name;
}

Cloud read_cloud(const std::string& path) {
  rgc_cloud* raw = nullptr;
  check(rgc_cloud_read(path.c_str(), &raw));
  return Cloud(raw);
}

Truth build_truth(const rgc_cloud* cloud, double r) {
  rgc_truth* raw = nullptr;
  check(rgc_truth_build(cloud, r, &raw));
  return Truth(raw);
}

// Points plus an edge list drawn from them; r comes from the edge-list header.
struct Loaded {
  Cloud cloud;
  Truth truth;
  Perturbed pg;
};

Loaded load_observed(const std::string& points, const std::string& edges) {
  Loaded l;
  l.cloud = read_cloud(points);
  std::size_t n = 0;
  double r = 0;
  check(rgc_edge_list_header(edges.c_str(), &n, &r, nullptr, nullptr, nullptr));
  if (n != rgc_cloud_size(l.cloud.get())) {
    throw Failure{2, "edge list has n = " + std::to_string(n) + " but the point file has " +
                         std::to_string(rgc_cloud_size(l.cloud.get())) + " points"};
  }
  l.truth = build_truth(l.cloud.get(), r);
  rgc_perturbed* raw = nullptr;
  check(rgc_perturbed_read(l.truth.get(), edges.c_str(), &raw));
  l.pg.reset(raw);
  return l;
}

json label_counts(const rgc_perturbed* pg) {
  std::size_t good = 0, bad = 0, indet = 0;
  rgc_perturbed_label_counts(pg, &good, &bad, &indet);
  return {{"edges", rgc_perturbed_edge_count(pg)},
          {"good", good},
          {"bad", bad},
          {"indeterminate", indet}};
}

json number_or_inf(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

void add_common(CLI::App* sub, Common& c, bool with_seed) {
  sub->add_option("--config", c.config, "JSON config supplying defaults")->check(CLI::ExistingFile);
  if (with_seed) sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random geometric graphs under ER perturbation: edge clique numbers, "
               "clique filtering, and metric recovery"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rgc_version());

  // generate
  Common gen_c;
  std::string gen_space = "flat-torus";
  std::size_t gen_dim = 2, gen_n = 0;
  std::optional<double> gen_r, gen_sn;
  auto* gen = app.add_subcommand("generate", "Sample a point cloud (writes points.csv)");
  add_common(gen, gen_c, true);
  gen->add_option("--space", gen_space, "unit-cube or flat-torus");
  gen->add_option("--dim", gen_dim, "Dimension")->check(CLI::PositiveNumber);
  gen->add_option("--n", gen_n, "Number of points");
  auto* gen_r_opt = gen->add_option("--r", gen_r, "Connection radius");
  gen->add_option("--sn", gen_sn, "Target s*n (solves for r)")->excludes(gen_r_opt);

  // perturb
  Common per_c;
  std::string per_points;
  std::optional<double> per_r, per_sn, per_p, per_q;
  auto* per = app.add_subcommand("perturb", "Build G* and apply (p, q) perturbation (writes edges.txt)");
  add_common(per, per_c, true);
  per->add_option("--points", per_points, "Point file")->required()->check(CLI::ExistingFile);
  auto* per_r_opt = per->add_option("--r", per_r, "Connection radius");
  per->add_option("--sn", per_sn, "Target s*n (solves for r)")->excludes(per_r_opt);
  per->add_option("--p", per_p, "Deletion probability");
  per->add_option("--q", per_q, "Insertion probability");

  // classify
  Common cls_c;
  std::string cls_points, cls_edges;
  auto* cls = app.add_subcommand("classify", "Label observed edges good/bad/indeterminate");
  add_common(cls, cls_c, false);
  cls->add_option("--points", cls_points)->required()->check(CLI::ExistingFile);
  cls->add_option("--edges", cls_edges)->required()->check(CLI::ExistingFile);

  // cliques
  Common clq_c;
  std::string clq_points, clq_edges, clq_mode = "full";
  std::uint64_t clq_budget = 10'000'000;
  auto* clq = app.add_subcommand("cliques", "Edge clique numbers (writes cliques.csv)");
  add_common(clq, clq_c, false);
  clq->add_option("--points", clq_points)->required()->check(CLI::ExistingFile);
  clq->add_option("--edges", clq_edges)->required()->check(CLI::ExistingFile);
  clq->add_option("--mode", clq_mode, "full or extremes")
      ->check(CLI::IsMember({"full", "extremes"}));
  clq->add_option("--budget", clq_budget, "Search nodes per edge");

  // filter
  Common flt_c;
  std::string flt_points, flt_edges;
  std::optional<std::string> flt_method;
  std::optional<double> flt_threshold;
  bool flt_scores = false;
  std::uint64_t flt_budget = 10'000'000;
  auto* flt = app.add_subcommand("filter", "Clique or Jaccard filtering (writes filtered.txt)");
  add_common(flt, flt_c, false);
  flt->add_option("--points", flt_points)->required()->check(CLI::ExistingFile);
  flt->add_option("--edges", flt_edges)->required()->check(CLI::ExistingFile);
  flt->add_option("--method", flt_method, "clique or jaccard")
      ->check(CLI::IsMember({"clique", "jaccard"}));
  flt->add_option("--threshold,--tau", flt_threshold, "tau for clique, [0,1] for jaccard");
  flt->add_flag("--scores", flt_scores, "Record exact clique numbers as scores");
  flt->add_option("--budget", flt_budget, "Search nodes per edge");

  // recover
  Common rec_c;
  std::string rec_points, rec_edges, rec_filtered;
  bool rec_distances = false;
  auto* rec = app.add_subcommand("recover", "Stretch of the filtered graph against G*");
  add_common(rec, rec_c, false);
  rec->add_option("--points", rec_points)->required()->check(CLI::ExistingFile);
  rec->add_option("--edges", rec_edges)->required()->check(CLI::ExistingFile);
  rec->add_option("--filtered", rec_filtered, "Filter output file")
      ->required()
      ->check(CLI::ExistingFile);
  rec->add_flag("--distances", rec_distances, "Write both distance matrices as CSV");

  // bounds
  Common bnd_c;
  rgc_bounds_params bp;
  rgc_bounds_params_init(&bp);
  std::vector<std::size_t> bnd_blocks;
  auto* bnd = app.add_subcommand("bounds", "Closed-form thresholds and expectations as JSON");
  add_common(bnd, bnd_c, false);
  bnd->add_option("--n", bp.n);
  bnd->add_option("--s", bp.s, "Lower r/2-ball mass");
  bnd->add_option("--rho", bp.rho);
  bnd->add_option("--p", bp.p);
  bnd->add_option("--q", bp.q);
  bnd->add_option("--K", bp.K, "Target clique size");
  bnd->add_option("--c1", bp.c1);
  bnd->add_option("--c2", bp.c2);
  bnd->add_option("--c3", bp.c3);
  bnd->add_option("--blocks", bnd_blocks, "Clique block sizes for the uv-clique expectation")
      ->delimiter(',');
  bnd->add_option("--k", bp.k, "Extra clique vertices beyond u and v");
  bnd->add_option("--er-n", bp.er_n, "Erdos-Renyi N for the clique quantities");
  bnd->add_option("--er-pbar", bp.er_pbar, "Erdos-Renyi edge probability");

  // experiment
  std::string exp_config, exp_out;
  std::optional<std::uint64_t> exp_seed;
  std::optional<std::size_t> exp_trials;
  std::optional<unsigned> exp_workers;
  bool exp_keep = false, exp_override = false;
  auto* exp = app.add_subcommand("experiment", "Monte Carlo experiments");
  exp->require_subcommand(1);
  auto* exp_gap = exp->add_subcommand("gap", "Good/bad clique-number gap");
  auto* exp_rec = exp->add_subcommand("recovery", "Metric recovery after filtering");
  for (auto* sub : {exp_gap, exp_rec}) {
    sub->add_option("--config", exp_config, "Experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", exp_seed, "Base seed");
    sub->add_option("--trials", exp_trials, "Number of trials")->check(CLI::PositiveNumber);
    sub->add_option("--workers", exp_workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--keep-artifacts", exp_keep, "Keep per-trial intermediate files");
    sub->add_flag("--override-assumption-a", exp_override,
                  "Run even when Assumption-A fails");
    sub->add_option("--out", exp_out, "Report directory (overrides out_dir)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      json cfg = gen_c.config.empty() ? json::object() : load_config_json(gen_c.config);
      if (!gen_c.config.empty()) {
        if (gen->count("--space") == 0) gen_space = cfg["space"];
        if (gen->count("--dim") == 0) gen_dim = cfg["dim"];
        if (gen->count("--n") == 0) gen_n = cfg["n"];
        if (!gen_r && !gen_sn) {
          if (!cfg["r"].is_null()) gen_r = cfg["r"].get<double>();
          if (!cfg["target_sn"].is_null()) gen_sn = cfg["target_sn"].get<double>();
        }
        if (!gen_c.seed) gen_c.seed = cfg["base_seed"].get<std::uint64_t>();
      }
      if (gen_n < 1) throw Failure{2, "--n is required (directly or via --config)"};
      rgc_space space;
      check(rgc_space_parse(gen_space.c_str(), &space));
      if (gen_sn) {
        double r = 0;
        check(rgc_radius_for_sn(space, gen_dim, gen_n, *gen_sn, &r));
        gen_r = r;
      }
      rgc_cloud* raw = nullptr;
      check(rgc_cloud_sample(space, gen_dim, gen_n, gen_c.seed.value_or(1), &raw));
      Cloud cloud(raw);
      const auto path = out_file(gen_c, "points.csv");
      check(rgc_cloud_write(cloud.get(), path.string().c_str()));
      json report = {{"points", path.string()}, {"n", gen_n}, {"seed", gen_c.seed.value_or(1)}};
      if (gen_r) {
        double s = 0, rho = 1;
        int ok = 0;
        check(rgc_mass_bounds(space, gen_dim, *gen_r, gen_n, &s, &rho, &ok));
        Truth truth = build_truth(cloud.get(), *gen_r);
        report["r"] = *gen_r;
        report["s"] = s;
        report["rho"] = rho;
        report["sn"] = s * static_cast<double>(gen_n);
        report["assumption_a"] = ok != 0;
        report["truth_edges"] = rgc_truth_edge_count(truth.get());
      }
      std::cout << report.dump(2) << '\n';
      return 0;
    }

    if (*per) {
      json cfg = per_c.config.empty() ? json::object() : load_config_json(per_c.config);
      if (!per_c.config.empty()) {
        if (!per_r && !per_sn) {
          if (!cfg["r"].is_null()) per_r = cfg["r"].get<double>();
          if (!cfg["target_sn"].is_null()) per_sn = cfg["target_sn"].get<double>();
        }
        if (!per_p) per_p = cfg["p"].get<double>();
        if (!per_q) per_q = cfg["q"].get<double>();
        if (!per_c.seed) per_c.seed = cfg["base_seed"].get<std::uint64_t>();
      }
      Cloud cloud = read_cloud(per_points);
      if (per_sn) {
        double r = 0;
        check(rgc_radius_for_sn(rgc_cloud_space(cloud.get()), rgc_cloud_dim(cloud.get()),
                                rgc_cloud_size(cloud.get()), *per_sn, &r));
        per_r = r;
      }
      if (!per_r) throw Failure{2, "perturb needs --r or --sn"};
      Truth truth = build_truth(cloud.get(), *per_r);
      rgc_perturbed* raw = nullptr;
      check(rgc_perturb(truth.get(), per_p.value_or(0.0), per_q.value_or(0.0),
                        per_c.seed.value_or(1), &raw));
      Perturbed pg(raw);
      const auto path = out_file(per_c, "edges.txt");
      check(rgc_perturbed_write(pg.get(), path.string().c_str()));
      json report = label_counts(pg.get());
      report["edge_list"] = path.string();
      report["r"] = *per_r;
      report["truth_edges"] = rgc_truth_edge_count(truth.get());
      std::cout << report.dump(2) << '\n';
      return 0;
    }

    if (*cls) {
      auto l = load_observed(cls_points, cls_edges);
      const auto path = out_file(cls_c, "classified.txt");
      check(rgc_perturbed_write(l.pg.get(), path.string().c_str()));
      json report = label_counts(l.pg.get());
      report["edge_list"] = path.string();
      std::cout << report.dump(2) << '\n';
      return 0;
    }

    if (*clq) {
      auto l = load_observed(clq_points, clq_edges);
      const auto csv = out_file(clq_c, "cliques.csv");
      char* summary = nullptr;
      check(rgc_cliques(l.pg.get(), clq_mode == "extremes" ? RGC_STATS_EXTREMES : RGC_STATS_FULL,
                        clq_budget, clq_c.workers, csv.string().c_str(), &summary));
      const std::string text = take(summary);
      const auto js = out_file(clq_c, "cliques_summary.json");
      std::ofstream(js) << text << '\n';
      std::cout << text << '\n';
      return 0;
    }

    if (*flt) {
      if (!flt_c.config.empty()) {
        json cfg = load_config_json(flt_c.config);
        if (!cfg["filter"].is_null()) {
          if (!flt_method) flt_method = cfg["filter"]["method"].get<std::string>();
          if (!flt_threshold) flt_threshold = cfg["filter"]["threshold"].get<double>();
        }
      }
      if (!flt_threshold) throw Failure{2, "filter needs --threshold (or --tau)"};
      auto l = load_observed(flt_points, flt_edges);
      rgc_filtered* raw = nullptr;
      const auto method =
          flt_method.value_or("clique") == "jaccard" ? RGC_FILTER_JACCARD : RGC_FILTER_CLIQUE;
      check(rgc_filter(l.pg.get(), method, *flt_threshold, flt_scores, flt_budget,
                       flt_c.workers, &raw));
      Filtered fg(raw);
      const auto path = out_file(flt_c, "filtered.txt");
      check(rgc_filtered_write(fg.get(), path.string().c_str()));
      json report = {{"method", flt_method.value_or("clique")},
                     {"threshold", *flt_threshold},
                     {"edges", rgc_perturbed_edge_count(l.pg.get())},
                     {"kept", rgc_filtered_kept_count(fg.get())},
                     {"filtered", path.string()}};
      std::cout << report.dump(2) << '\n';
      return 0;
    }

    if (*rec) {
      auto l = load_observed(rec_points, rec_edges);
      rgc_filtered* raw = nullptr;
      check(rgc_filtered_read(l.pg.get(), rec_filtered.c_str(), &raw));
      Filtered fg(raw);
      std::string dt, df;
      if (rec_distances) {
        dt = out_file(rec_c, "distances_truth.csv").string();
        df = out_file(rec_c, "distances_filtered.csv").string();
      }
      rgc_recovery r{};
      check(rgc_recover(l.pg.get(), fg.get(), rec_c.workers,
                        rec_distances ? dt.c_str() : nullptr,
                        rec_distances ? df.c_str() : nullptr, &r));
      json report = {{"alpha", number_or_inf(r.alpha)},
                     {"alpha_le_3", r.alpha <= 3.0},
                     {"connectivity_mismatch", r.connectivity_mismatch != 0},
                     {"e1", r.e1 != 0},
                     {"e2", r.e2 != 0},
                     {"e3", r.e3 != 0},
                     {"good_removed", r.good_removed},
                     {"bad_kept", r.bad_kept}};
      const auto path = out_file(rec_c, "recovery.json");
      std::ofstream(path) << report.dump(2) << '\n';
      std::cout << report.dump(2) << '\n';
      return 0;
    }

    if (*bnd) {
      bp.blocks = bnd_blocks.data();
      bp.m = bnd_blocks.size();
      char* text = nullptr;
      check(rgc_bounds(&bp, &text));
      const std::string out = take(text);
      if (bnd->count("--out") > 0) std::ofstream(out_file(bnd_c, "bounds.json")) << out << '\n';
      std::cout << out << '\n';
      return 0;
    }

    if (*exp) {
      rgc_config* raw = nullptr;
      check(rgc_config_load(exp_config.c_str(), &raw));
      Config cfg(raw);
      char* defaults = nullptr;
      check(rgc_config_defaults(cfg.get(), &defaults));
      const std::string d = take(defaults);
      if (!d.empty()) std::cerr << "defaults used for: " << d << '\n';
      if (exp_seed) rgc_config_set_seed(cfg.get(), *exp_seed);
      if (exp_trials) check(rgc_config_set_trials(cfg.get(), *exp_trials));
      if (exp_workers) check(rgc_config_set_workers(cfg.get(), *exp_workers));
      if (exp_keep) rgc_config_set_keep_artifacts(cfg.get(), 1);
      if (exp_override) rgc_config_set_override_assumption_a(cfg.get(), 1);
      if (!exp_out.empty()) check(rgc_config_set_out_dir(cfg.get(), exp_out.c_str()));
      char* summary = nullptr;
      const auto status = rgc_experiment_run(
          cfg.get(), *exp_rec ? RGC_EXPERIMENT_RECOVERY : RGC_EXPERIMENT_GAP, &summary);
      if (summary) std::cout << take(summary) << '\n';
      check(status);
      return 0;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
