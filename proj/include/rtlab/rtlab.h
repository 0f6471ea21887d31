#ifndef RTLAB_RTLAB_H
#define RTLAB_RTLAB_H

/* C interface to the rtlab core. Every call returns an rtlab_status; on
 * failure rtlab_last_error() describes the cause (per thread). Strings handed
 * out through char** are owned by the caller and released with
 * rtlab_string_free. Structured results are JSON documents. Rationals are
 * passed as text ("3/10", "0.3", "2"). */

#include <stdint.h>

#if defined(_WIN32)
#define RTLAB_API __declspec(dllexport)
#else
#define RTLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rtlab_status {
  RTLAB_OK = 0,
  RTLAB_ERR_INVALID_ARGUMENT = 1,
  RTLAB_ERR_CAP_EXCEEDED = 2,
  RTLAB_ERR_PARSE = 3,
  RTLAB_ERR_INTERNAL = 4
} rtlab_status;

typedef struct rtlab_graph rtlab_graph;
typedef struct rtlab_ramsey_cache rtlab_ramsey_cache;

RTLAB_API const char* rtlab_version(void);
RTLAB_API const char* rtlab_last_error(void);
RTLAB_API const char* rtlab_status_name(rtlab_status status);
RTLAB_API void rtlab_string_free(char* s);
/* Stable sub-seed for the index-th call of a module under a global seed. */
RTLAB_API uint64_t rtlab_derive_seed(uint64_t seed, const char* module, uint64_t index);

/* Graphs */
RTLAB_API rtlab_status rtlab_graph_new(int n, rtlab_graph** out);
RTLAB_API rtlab_status rtlab_graph_from_graph6(const char* text, rtlab_graph** out);
RTLAB_API rtlab_status rtlab_graph_from_json(const char* edge_list_json, rtlab_graph** out);
/* "complete", "cycle", "path", "empty" take n; "petersen" and "c5" ignore it. */
RTLAB_API rtlab_status rtlab_graph_named(const char* name, int n, rtlab_graph** out);
/* G(n, p) from the seed. */
RTLAB_API rtlab_status rtlab_graph_random(int n, double p, uint64_t seed, rtlab_graph** out);
RTLAB_API rtlab_status rtlab_graph_clone(const rtlab_graph* g, rtlab_graph** out);
RTLAB_API void rtlab_graph_free(rtlab_graph* g);
RTLAB_API int rtlab_graph_order(const rtlab_graph* g);
RTLAB_API rtlab_status rtlab_graph_add_edge(rtlab_graph* g, int u, int v);
RTLAB_API rtlab_status rtlab_graph_adjacent(const rtlab_graph* g, int u, int v, int* out);
RTLAB_API rtlab_status rtlab_graph_edge_count(const rtlab_graph* g, int64_t* out);
RTLAB_API rtlab_status rtlab_graph_to_graph6(const rtlab_graph* g, char** out);
RTLAB_API rtlab_status rtlab_graph_to_json(const rtlab_graph* g, char** out);
RTLAB_API rtlab_status rtlab_graph_clique_number(const rtlab_graph* g, int* out);
RTLAB_API rtlab_status rtlab_graph_independence_number(const rtlab_graph* g, int* out);
RTLAB_API rtlab_status rtlab_graph_d_independence_number(const rtlab_graph* g, int d, int* out);
/* vertices_json: [v0, v1, ...] */
RTLAB_API rtlab_status rtlab_graph_is_clique(const rtlab_graph* g, const char* vertices_json, int* out);
/* {"n", "edges", "omega", "alpha", "max_clique", "min_degree", "max_degree"}; flags select omega/alpha. */
RTLAB_API rtlab_status rtlab_graph_stats(const rtlab_graph* g, int with_omega, int with_alpha, char** out);

/* Constructions: spec is a construction document such as
 * {"kind": "compose", "n": 20, "r": 2, "inner": "petersen"}. */
RTLAB_API rtlab_status rtlab_construct(const char* spec_json, int with_stats, rtlab_graph** out, char** sidecar_json);

/* Ramsey oracle. The cache may be NULL; when given it is consulted and updated. */
RTLAB_API rtlab_status rtlab_ramsey_cache_new(rtlab_ramsey_cache** out);
RTLAB_API void rtlab_ramsey_cache_free(rtlab_ramsey_cache* cache);
RTLAB_API rtlab_status rtlab_ramsey_cache_load(rtlab_ramsey_cache* cache, const char* path, int* rejected);
RTLAB_API rtlab_status rtlab_ramsey_cache_save(const rtlab_ramsey_cache* cache, const char* path);
RTLAB_API rtlab_status rtlab_ramsey_cache_import(rtlab_ramsey_cache* cache, const char* jsonl, int* rejected);
RTLAB_API rtlab_status rtlab_ramsey_cache_export(const rtlab_ramsey_cache* cache, char** jsonl);
RTLAB_API rtlab_status rtlab_ramsey_r(rtlab_ramsey_cache* cache, int s, int t, int n_max, int64_t level_cap,
                                      char** out);
/* options_json may be NULL: {"reach_t3", "reach_t4", "reach_other", "level_cap", "heuristic_budget", "seed"}. */
RTLAB_API rtlab_status rtlab_ramsey_q(rtlab_ramsey_cache* cache, int t, int n, const char* options_json, char** out);
RTLAB_API rtlab_status rtlab_ramsey_q_bounds(int t, int n, double c1, double c2, char** out);

/* Ramsey-Turan solver. */
RTLAB_API rtlab_status rtlab_rt_exact(int n, int s, int m, int cap, int64_t floor_proposals, char** out);
RTLAB_API rtlab_status rtlab_rt_search(int n, int s, int m, int64_t budget, uint64_t seed,
                                       const rtlab_graph* warm_start, char** out);
RTLAB_API rtlab_status rtlab_rt_check(const rtlab_graph* g, int s, int m, int* out);

/* Dependent random choice. */
RTLAB_API rtlab_status rtlab_drc_predicate(int64_t n, const char* d, int t, int r, int m, int a, char** out);
RTLAB_API rtlab_status rtlab_drc_find(const rtlab_graph* g, int t, int r, int m, int a, int64_t trials,
                                      uint64_t seed, int with_repetition, char** out);
/* a <= 0 means the default target. */
RTLAB_API rtlab_status rtlab_drc_amplify(const rtlab_graph* g, int r, int m, int t, int k, int64_t trials,
                                         uint64_t seed, int a, char** out);

/* Hypergraph dependent random choice. parts_json: [[v, ...], ...] */
RTLAB_API rtlab_status rtlab_hdrc_embed(const rtlab_graph* g, const char* parts_json, const char* params_json,
                                        const char* variant, uint64_t seed, char** out);
/* One step on the transversal clique hypergraph of the parts; census_delta > 0 adds the dangerous-set count. */
RTLAB_API rtlab_status rtlab_hdrc_step(const rtlab_graph* g, const char* parts_json, int s, double eps,
                                       uint64_t seed, int census_delta, int census_w, const char* beta,
                                       char** out);
RTLAB_API rtlab_status rtlab_hdrc_schedule(int p, int q, const char* variant, double n, double eps0, char** out);

/* Regularity. */
RTLAB_API rtlab_status rtlab_reg_pair(const rtlab_graph* g, const char* a_json, const char* b_json, const char* rho,
                                      int exact, int64_t samples, uint64_t seed, char** out);
RTLAB_API rtlab_status rtlab_reg_cluster(const rtlab_graph* g, const char* partition_json, const char* rho,
                                         const char* d_min, int64_t samples, uint64_t seed, char** out);
RTLAB_API rtlab_status rtlab_reg_transversal(const rtlab_graph* g, const char* parts_json, int64_t* out);

/* Densities. assume_gap switches on the polynomial Ramsey gap assumption. */
RTLAB_API rtlab_status rtlab_density_lookup(int s, const char* f, int assume_gap, char** out);
RTLAB_API rtlab_status rtlab_density_pt(int s, const char* f, const char* g, int assume_gap, char** out);
RTLAB_API rtlab_status rtlab_density_strong_pt(int s, int t, char** out);
/* format: "plain", "json" or "html". s_lo = s_hi = 0 selects the K13 column table. */
RTLAB_API rtlab_status rtlab_density_table(int s_lo, int s_hi, int assume_gap, const char* format, char** out);

#ifdef __cplusplus
}
#endif

#endif
