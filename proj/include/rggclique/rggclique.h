/* C interface to the rggclique library. All handles are opaque; every call
 * returns an rgc_status and, on failure, leaves a message retrievable with
 * rgc_last_error() on the calling thread. Strings returned through char**
 * are owned by the caller and released with rgc_string_free. */
#ifndef RGGCLIQUE_H
#define RGGCLIQUE_H

#include <stddef.h>
#include <stdint.h>

#if defined(RGC_BUILDING_LIBRARY)
#define RGC_API __attribute__((visibility("default")))
#else
#define RGC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rgc_status {
  RGC_OK = 0,
  RGC_ERR_INVALID_ARGUMENT = 1,
  RGC_ERR_BUDGET_EXCEEDED = 2,
  RGC_ERR_INFEASIBLE = 3,
  RGC_ERR_PARSE = 4,
  RGC_ERR_IO = 5,
  RGC_ERR_INTERNAL = 6
} rgc_status;

typedef enum rgc_space { RGC_UNIT_CUBE = 0, RGC_FLAT_TORUS = 1 } rgc_space;
typedef enum rgc_filter_method { RGC_FILTER_CLIQUE = 0, RGC_FILTER_JACCARD = 1 } rgc_filter_method;
typedef enum rgc_stats_mode { RGC_STATS_FULL = 0, RGC_STATS_EXTREMES = 1 } rgc_stats_mode;
typedef enum rgc_experiment { RGC_EXPERIMENT_GAP = 0, RGC_EXPERIMENT_RECOVERY = 1 } rgc_experiment;

typedef struct rgc_cloud rgc_cloud;         /* sampled points */
typedef struct rgc_truth rgc_truth;         /* hidden r-neighborhood graph */
typedef struct rgc_perturbed rgc_perturbed; /* observed graph with labels */
typedef struct rgc_filtered rgc_filtered;   /* filter decisions */
typedef struct rgc_config rgc_config;       /* experiment configuration */

RGC_API const char* rgc_last_error(void);
RGC_API const char* rgc_version(void);
RGC_API void rgc_string_free(char* s);

/* Text name of a space ("unit-cube", "flat-torus"; "cube" and "torus" are
 * accepted on input). */
RGC_API rgc_status rgc_space_parse(const char* text, rgc_space* out);

/* Lower r/2-ball mass s, regularity rho, and the Assumption-A verdict. */
RGC_API rgc_status rgc_mass_bounds(rgc_space space, size_t dim, double r, size_t n,
                                   double* s, double* rho, int* assumption_a);
RGC_API rgc_status rgc_radius_for_sn(rgc_space space, size_t dim, size_t n,
                                     double target_sn, double* r);

RGC_API rgc_status rgc_cloud_sample(rgc_space space, size_t dim, size_t n, uint64_t seed,
                                    rgc_cloud** out);
RGC_API rgc_status rgc_cloud_read(const char* path, rgc_cloud** out);
RGC_API rgc_status rgc_cloud_write(const rgc_cloud* cloud, const char* path);
RGC_API size_t rgc_cloud_size(const rgc_cloud* cloud);
RGC_API size_t rgc_cloud_dim(const rgc_cloud* cloud);
RGC_API rgc_space rgc_cloud_space(const rgc_cloud* cloud);
RGC_API void rgc_cloud_free(rgc_cloud* cloud);

RGC_API rgc_status rgc_truth_build(const rgc_cloud* cloud, double r, rgc_truth** out);
RGC_API size_t rgc_truth_edge_count(const rgc_truth* truth);
RGC_API double rgc_truth_radius(const rgc_truth* truth);
RGC_API void rgc_truth_free(rgc_truth* truth);

/* Perturbs and classifies every observed edge. */
RGC_API rgc_status rgc_perturb(const rgc_truth* truth, double p, double q, uint64_t seed,
                               rgc_perturbed** out);
/* Reads an edge list drawn from `truth`; labels are recomputed when the
 * file carries placeholders. */
RGC_API rgc_status rgc_perturbed_read(const rgc_truth* truth, const char* path,
                                      rgc_perturbed** out);
/* Reads only the header (n, r, p, q, seed) of an edge-list file. */
RGC_API rgc_status rgc_edge_list_header(const char* path, size_t* n, double* r, double* p,
                                        double* q, uint64_t* seed);
RGC_API rgc_status rgc_perturbed_write(const rgc_perturbed* pg, const char* path);
RGC_API size_t rgc_perturbed_edge_count(const rgc_perturbed* pg);
RGC_API void rgc_perturbed_label_counts(const rgc_perturbed* pg, size_t* good, size_t* bad,
                                        size_t* indeterminate);
RGC_API void rgc_perturbed_free(rgc_perturbed* pg);

/* Edge clique numbers; writes `u,v,label,omega` CSV to csv_path (if not
 * NULL) and returns the per-class summary JSON. */
RGC_API rgc_status rgc_cliques(const rgc_perturbed* pg, rgc_stats_mode mode, uint64_t budget,
                               unsigned workers, const char* csv_path, char** summary_json);
RGC_API rgc_status rgc_edge_clique_number(const rgc_perturbed* pg, uint32_t u, uint32_t v,
                                          uint64_t budget, size_t* omega);

RGC_API rgc_status rgc_filter(const rgc_perturbed* pg, rgc_filter_method method,
                              double threshold, int exact_scores, uint64_t budget,
                              unsigned workers, rgc_filtered** out);
/* Rebuilds filter decisions from a file written by rgc_filtered_write. */
RGC_API rgc_status rgc_filtered_read(const rgc_perturbed* pg, const char* path,
                                     rgc_filtered** out);
RGC_API rgc_status rgc_filtered_write(const rgc_filtered* fg, const char* path);
RGC_API size_t rgc_filtered_kept_count(const rgc_filtered* fg);
RGC_API void rgc_filtered_free(rgc_filtered* fg);

typedef struct rgc_recovery {
  double alpha; /* +infinity when connectivity differs */
  int connectivity_mismatch;
  int e1, e2, e3;
  size_t good_removed;
  size_t bad_kept;
} rgc_recovery;

/* Stretch of the filtered graph against the truth; optionally writes both
 * distance matrices as `i,j,dist` CSV. */
RGC_API rgc_status rgc_recover(const rgc_perturbed* pg, const rgc_filtered* fg,
                               unsigned workers, const char* truth_distances_path,
                               const char* filtered_distances_path, rgc_recovery* out);

typedef struct rgc_bounds_params {
  double n, s, rho, p, q, K, c1, c2, c3;
  /* Optional expectation profile: m = 0 skips it. */
  const size_t* blocks;
  size_t m;
  size_t k;
  /* Optional Erdos-Renyi clique quantities: er_n = 0 skips them. */
  size_t er_n;
  double er_pbar;
} rgc_bounds_params;

RGC_API void rgc_bounds_params_init(rgc_bounds_params* params);
RGC_API rgc_status rgc_bounds(const rgc_bounds_params* params, char** json);

RGC_API rgc_status rgc_config_load(const char* path, rgc_config** out);
RGC_API rgc_status rgc_config_parse(const char* json, rgc_config** out);
/* Names of fields left at their defaults, comma separated. */
RGC_API rgc_status rgc_config_defaults(const rgc_config* config, char** fields);
RGC_API rgc_status rgc_config_to_json(const rgc_config* config, char** json);
RGC_API void rgc_config_set_seed(rgc_config* config, uint64_t seed);
RGC_API rgc_status rgc_config_set_trials(rgc_config* config, size_t trials);
RGC_API rgc_status rgc_config_set_workers(rgc_config* config, unsigned workers);
RGC_API void rgc_config_set_keep_artifacts(rgc_config* config, int keep);
RGC_API void rgc_config_set_override_assumption_a(rgc_config* config, int override_a);
RGC_API rgc_status rgc_config_set_out_dir(rgc_config* config, const char* dir);
RGC_API void rgc_config_free(rgc_config* config);

/* Runs the experiment, writes reports to the configured out_dir, and
 * returns summary.json's content. A trial that exhausts the clique budget is
 * recorded as failed and the call returns RGC_ERR_BUDGET_EXCEEDED after the
 * reports are written. */
RGC_API rgc_status rgc_experiment_run(const rgc_config* config, rgc_experiment kind,
                                      char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* RGGCLIQUE_H */
