#include "rggclique/rggclique.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "rggclique/bounds.hpp"
#include "rggclique/cliques.hpp"
#include "rggclique/errors.hpp"
#include "rggclique/filtering.hpp"
#include "rggclique/graph_metrics.hpp"
#include "rggclique/graphgen.hpp"
#include "rggclique/harness.hpp"
#include "rggclique/metric_space.hpp"

using namespace rggclique;

struct rgc_cloud {
  PointCloud cloud;
};
struct rgc_truth {
  std::shared_ptr<const GeometricGraph> graph;
};
struct rgc_perturbed {
  PerturbedGraph pg;
  std::vector<EdgeLabel> labels;
};
struct rgc_filtered {
  FilteredGraph fg;
};
struct rgc_config {
  LoadedConfig loaded;
};

namespace {

thread_local std::string last_error;

rgc_status fail(rgc_status status, const char* message) {
  last_error = message;
  return status;
}

rgc_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return RGC_ERR_INVALID_ARGUMENT;
    case ErrorKind::budget_exceeded: return RGC_ERR_BUDGET_EXCEEDED;
    case ErrorKind::infeasible: return RGC_ERR_INFEASIBLE;
    case ErrorKind::parse: return RGC_ERR_PARSE;
    case ErrorKind::io: return RGC_ERR_IO;
  }
  return RGC_ERR_INTERNAL;
}

// Runs f, translating exceptions into status codes.
template <class F>
rgc_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return RGC_OK;
  } catch (const Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RGC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RGC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RGC_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw invalid_argument(std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

SpaceKind space_kind(rgc_space space) {
  switch (space) {
    case RGC_UNIT_CUBE: return SpaceKind::unit_cube;
    case RGC_FLAT_TORUS: return SpaceKind::flat_torus;
  }
  throw invalid_argument("unknown space");
}

std::ifstream open_in(const char* path) {
  require(path, "path");
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, std::string("cannot read ") + path);
  return in;
}

template <class W>
void write_to(const char* path, W&& writer) {
  require(path, "path");
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, std::string("cannot write ") + path);
  writer(out);
  out.flush();
  if (!out) throw Error(ErrorKind::io, std::string("write failed for ") + path);
}

}  // namespace

extern "C" {

const char* rgc_last_error(void) { return last_error.c_str(); }

const char* rgc_version(void) { return "0.1.0"; }

void rgc_string_free(char* s) { std::free(s); }

rgc_status rgc_space_parse(const char* text, rgc_space* out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = parse_space_kind(text) == SpaceKind::unit_cube ? RGC_UNIT_CUBE : RGC_FLAT_TORUS;
  });
}

rgc_status rgc_mass_bounds(rgc_space space, size_t dim, double r, size_t n, double* s,
                           double* rho, int* assumption_a) {
  return guard([&] {
    const auto mass = ball_mass_bounds(MetricSpace::make(space_kind(space), dim), r);
    if (s) *s = mass.s;
    if (rho) *rho = mass.rho;
    if (assumption_a) *assumption_a = n >= 2 && assumption_a_holds(mass, n);
  });
}

rgc_status rgc_radius_for_sn(rgc_space space, size_t dim, size_t n, double target_sn,
                             double* r) {
  return guard([&] {
    require(r, "r");
    *r = radius_for_target_sn(MetricSpace::make(space_kind(space), dim), n, target_sn);
  });
}

rgc_status rgc_cloud_sample(rgc_space space, size_t dim, size_t n, uint64_t seed,
                            rgc_cloud** out) {
  return guard([&] {
    require(out, "out");
    *out = new rgc_cloud{sample_points(MetricSpace::make(space_kind(space), dim), n, seed)};
  });
}

rgc_status rgc_cloud_read(const char* path, rgc_cloud** out) {
  return guard([&] {
    require(out, "out");
    auto in = open_in(path);
    *out = new rgc_cloud{read_point_cloud(in)};
  });
}

rgc_status rgc_cloud_write(const rgc_cloud* cloud, const char* path) {
  return guard([&] {
    require(cloud, "cloud");
    write_to(path, [&](std::ostream& o) { write_point_cloud(o, cloud->cloud); });
  });
}

size_t rgc_cloud_size(const rgc_cloud* cloud) { return cloud ? cloud->cloud.size() : 0; }

size_t rgc_cloud_dim(const rgc_cloud* cloud) { return cloud ? cloud->cloud.dim() : 0; }

rgc_space rgc_cloud_space(const rgc_cloud* cloud) {
  return cloud && cloud->cloud.space().kind() == SpaceKind::unit_cube ? RGC_UNIT_CUBE
                                                                      : RGC_FLAT_TORUS;
}

void rgc_cloud_free(rgc_cloud* cloud) { delete cloud; }

rgc_status rgc_truth_build(const rgc_cloud* cloud, double r, rgc_truth** out) {
  return guard([&] {
    require(cloud, "cloud");
    require(out, "out");
    if (!(r > 0.0)) throw invalid_argument("r must be positive");
    *out = new rgc_truth{std::make_shared<const GeometricGraph>(build_rgg(cloud->cloud, r))};
  });
}

size_t rgc_truth_edge_count(const rgc_truth* truth) {
  return truth ? truth->graph->graph.edge_count() : 0;
}

double rgc_truth_radius(const rgc_truth* truth) { return truth ? truth->graph->r : 0.0; }

void rgc_truth_free(rgc_truth* truth) { delete truth; }

rgc_status rgc_perturb(const rgc_truth* truth, double p, double q, uint64_t seed,
                       rgc_perturbed** out) {
  return guard([&] {
    require(truth, "truth");
    require(out, "out");
    auto pg = perturb(truth->graph, p, q, seed);
    auto labels = classify_edges(pg);
    *out = new rgc_perturbed{std::move(pg), std::move(labels)};
  });
}

rgc_status rgc_perturbed_read(const rgc_truth* truth, const char* path, rgc_perturbed** out) {
  return guard([&] {
    require(truth, "truth");
    require(out, "out");
    auto in = open_in(path);
    const auto file = read_edge_list(in);
    auto pg = perturbed_from_edge_list(truth->graph, file);
    auto labels = classify_edges(pg);
    if (!file.labels.empty() && file.labels != labels) {
      throw Error(ErrorKind::parse, "edge labels in the file disagree with the truth graph");
    }
    *out = new rgc_perturbed{std::move(pg), std::move(labels)};
  });
}

rgc_status rgc_edge_list_header(const char* path, size_t* n, double* r, double* p, double* q,
                                uint64_t* seed) {
  return guard([&] {
    auto in = open_in(path);
    const auto file = read_edge_list(in);
    if (n) *n = file.n;
    if (r) *r = file.r;
    if (p) *p = file.p;
    if (q) *q = file.q;
    if (seed) *seed = file.seed;
  });
}

rgc_status rgc_perturbed_write(const rgc_perturbed* pg, const char* path) {
  return guard([&] {
    require(pg, "pg");
    write_to(path, [&](std::ostream& o) { write_edge_list(o, pg->pg, pg->labels); });
  });
}

size_t rgc_perturbed_edge_count(const rgc_perturbed* pg) {
  return pg ? pg->pg.observed.edge_count() : 0;
}

void rgc_perturbed_label_counts(const rgc_perturbed* pg, size_t* good, size_t* bad,
                                size_t* indeterminate) {
  LabelCounts c;
  if (pg) c = count_labels(pg->labels);
  if (good) *good = c.good;
  if (bad) *bad = c.bad;
  if (indeterminate) *indeterminate = c.indeterminate;
}

void rgc_perturbed_free(rgc_perturbed* pg) { delete pg; }

rgc_status rgc_cliques(const rgc_perturbed* pg, rgc_stats_mode mode, uint64_t budget,
                       unsigned workers, const char* csv_path, char** summary_json) {
  return guard([&] {
    require(pg, "pg");
    const auto stats = all_edge_clique_numbers(
        pg->pg, pg->labels,
        {mode == RGC_STATS_EXTREMES ? StatsMode::extremes : StatsMode::full, budget,
         workers == 0 ? 1u : workers});
    if (csv_path) write_to(csv_path, [&](std::ostream& o) { write_clique_csv(o, stats); });
    if (summary_json) *summary_json = dup_string(clique_summary_json(stats).dump(2));
  });
}

rgc_status rgc_edge_clique_number(const rgc_perturbed* pg, uint32_t u, uint32_t v,
                                  uint64_t budget, size_t* omega) {
  return guard([&] {
    require(pg, "pg");
    require(omega, "omega");
    *omega = edge_clique_number(pg->pg.observed, u, v, budget);
  });
}

rgc_status rgc_filter(const rgc_perturbed* pg, rgc_filter_method method, double threshold,
                      int exact_scores, uint64_t budget, unsigned workers, rgc_filtered** out) {
  return guard([&] {
    require(pg, "pg");
    require(out, "out");
    FilterConfig config{method == RGC_FILTER_JACCARD ? FilterMethod::jaccard
                                                     : FilterMethod::clique,
                        threshold};
    *out = new rgc_filtered{
        apply_filter(pg->pg, config, {exact_scores != 0, budget, workers == 0 ? 1u : workers})};
  });
}

rgc_status rgc_filtered_read(const rgc_perturbed* pg, const char* path, rgc_filtered** out) {
  return guard([&] {
    require(pg, "pg");
    require(out, "out");
    auto in = open_in(path);
    const auto file = read_filtered_graph(in);
    const auto edges = pg->pg.observed.edges();
    if (file.n != pg->pg.vertex_count() || file.edges.size() != edges.size() ||
        !std::equal(edges.begin(), edges.end(), file.edges.begin())) {
      throw Error(ErrorKind::parse, "filtered-graph file does not match the observed graph");
    }
    FilteredGraph fg;
    fg.config = file.config;
    fg.seed = file.seed;
    fg.observed = pg->pg.observed;
    fg.kept = file.kept;
    bool scored = true;
    for (const auto& s : file.scores) scored = scored && s.has_value();
    if (scored) {
      for (const auto& s : file.scores) fg.scores.push_back(*s);
    }
    fg.filtered = edge_subgraph(fg.observed, fg.kept);
    *out = new rgc_filtered{std::move(fg)};
  });
}

rgc_status rgc_filtered_write(const rgc_filtered* fg, const char* path) {
  return guard([&] {
    require(fg, "fg");
    write_to(path, [&](std::ostream& o) { write_filtered_graph(o, fg->fg); });
  });
}

size_t rgc_filtered_kept_count(const rgc_filtered* fg) { return fg ? fg->fg.kept_count() : 0; }

void rgc_filtered_free(rgc_filtered* fg) { delete fg; }

rgc_status rgc_recover(const rgc_perturbed* pg, const rgc_filtered* fg, unsigned workers,
                       const char* truth_distances_path, const char* filtered_distances_path,
                       rgc_recovery* out) {
  return guard([&] {
    require(pg, "pg");
    require(fg, "fg");
    require(out, "out");
    const unsigned w = workers == 0 ? 1u : workers;
    const auto& truth = *pg->pg.truth;
    const auto rep = recovery_stretch(truth, fg->fg, pg->labels, w);
    if (truth_distances_path) {
      const auto d = all_pairs_distances(truth.graph, w);
      write_to(truth_distances_path, [&](std::ostream& o) { write_distance_csv(o, d); });
    }
    if (filtered_distances_path) {
      const auto d = all_pairs_distances(fg->fg.filtered, w);
      write_to(filtered_distances_path, [&](std::ostream& o) { write_distance_csv(o, d); });
    }
    out->alpha = rep.approx.alpha;
    out->connectivity_mismatch = rep.approx.connectivity_mismatch;
    out->e1 = rep.e1;
    out->e2 = rep.e2;
    out->e3 = rep.e3;
    out->good_removed = rep.good_removed;
    out->bad_kept = rep.bad_kept;
  });
}

void rgc_bounds_params_init(rgc_bounds_params* params) {
  if (params == nullptr) return;
  *params = rgc_bounds_params{};
  params->n = 1000;
  params->s = 0.1;
  params->rho = 1;
  params->K = 2;
  params->c1 = params->c2 = params->c3 = 1;
  params->er_pbar = 0.5;
}

rgc_status rgc_bounds(const rgc_bounds_params* params, char** json) {
  return guard([&] {
    require(params, "params");
    require(json, "json");
    BoundsQuery query;
    query.model = {params->n, params->s,  params->rho, params->p, params->q,
                   params->K, params->c1, params->c2,  params->c3};
    if (params->m > 0) {
      require(params->blocks, "blocks");
      BlockProfile profile;
      profile.blocks.assign(params->blocks, params->blocks + params->m);
      profile.k = params->k;
      profile.q = params->q;
      profile.p = params->p;
      query.profile = profile;
    }
    if (params->er_n > 0) {
      query.er_n = params->er_n;
      query.er_pbar = params->er_pbar;
    }
    *json = dup_string(bounds_report(query).dump(2));
  });
}

rgc_status rgc_config_load(const char* path, rgc_config** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new rgc_config{load_config(path)};
  });
}

rgc_status rgc_config_parse(const char* json, rgc_config** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = new rgc_config{parse_config(json)};
  });
}

rgc_status rgc_config_defaults(const rgc_config* config, char** fields) {
  return guard([&] {
    require(config, "config");
    require(fields, "fields");
    std::string joined;
    for (const auto& f : config->loaded.defaulted) {
      if (!joined.empty()) joined += ',';
      joined += f;
    }
    *fields = dup_string(joined);
  });
}

rgc_status rgc_config_to_json(const rgc_config* config, char** json) {
  return guard([&] {
    require(config, "config");
    require(json, "json");
    *json = dup_string(config_to_json(config->loaded.config).dump(2));
  });
}

void rgc_config_set_seed(rgc_config* config, uint64_t seed) {
  if (config) config->loaded.config.base_seed = seed;
}

rgc_status rgc_config_set_trials(rgc_config* config, size_t trials) {
  return guard([&] {
    require(config, "config");
    if (trials < 1) throw invalid_argument("trials must be at least 1");
    config->loaded.config.trials = trials;
  });
}

rgc_status rgc_config_set_workers(rgc_config* config, unsigned workers) {
  return guard([&] {
    require(config, "config");
    if (workers < 1) throw invalid_argument("workers must be at least 1");
    config->loaded.config.workers = workers;
  });
}

void rgc_config_set_keep_artifacts(rgc_config* config, int keep) {
  if (config) config->loaded.config.keep_artifacts = keep != 0;
}

void rgc_config_set_override_assumption_a(rgc_config* config, int override_a) {
  if (config) config->loaded.config.override_assumption_a = override_a != 0;
}

rgc_status rgc_config_set_out_dir(rgc_config* config, const char* dir) {
  return guard([&] {
    require(config, "config");
    require(dir, "dir");
    config->loaded.config.out_dir = dir;
  });
}

void rgc_config_free(rgc_config* config) { delete config; }

rgc_status rgc_experiment_run(const rgc_config* config, rgc_experiment kind,
                              char** summary_json) {
  std::size_t failed = 0;
  const rgc_status status = guard([&] {
    require(config, "config");
    const auto& c = config->loaded.config;
    const auto result = run_experiment(
        kind == RGC_EXPERIMENT_RECOVERY ? ExperimentKind::recovery : ExperimentKind::gap, c);
    write_reports(result, c.out_dir);
    failed = result.summary.at("budget_exceeded").get<std::size_t>();
    if (summary_json) *summary_json = dup_string(result.summary.dump(2));
  });
  if (status == RGC_OK && failed > 0) {
    return fail(RGC_ERR_BUDGET_EXCEEDED,
                (std::to_string(failed) + " trial(s) exceeded the clique budget").c_str());
  }
  return status;
}

}  // extern "C"
