/* C API for the intermediacy library.
 *
 * All objects are opaque handles created and destroyed by this API.
 * Functions return IMY_OK on success; on failure they return an error code
 * and leave a human-readable message in imy_last_error() (thread-local).
 * Node and edge indices refer to positions inside a closure and are stable
 * for the lifetime of the closure handle.
 */
#ifndef INTERMEDIACY_H
#define INTERMEDIACY_H

#include <stddef.h>
#include <stdint.h>

#ifndef IMY_API
#define IMY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum imy_status {
    IMY_OK = 0,
    IMY_ERR_INVALID_ARGUMENT = 1,
    IMY_ERR_PARSE = 2,
    IMY_ERR_CYCLE = 3,
    IMY_ERR_SELF_LOOP = 4,
    IMY_ERR_DUPLICATE_EDGE = 5,
    IMY_ERR_UNKNOWN_NODE = 6,
    IMY_ERR_NO_PATH = 7,
    IMY_ERR_TOO_LARGE = 8,
    IMY_ERR_WOULD_CREATE_CYCLE = 9,
    IMY_ERR_PRECONDITION = 10,
    IMY_ERR_IO = 11,
    IMY_ERR_INTERNAL = 12
} imy_status;

typedef enum imy_method {
    IMY_METHOD_EXACT = 0,
    IMY_METHOD_MONTE_CARLO = 1
} imy_method;

typedef struct imy_graph imy_graph;
typedef struct imy_closure imy_closure;
typedef struct imy_scores imy_scores;
typedef struct imy_path_stats imy_path_stats;
typedef struct imy_main_path imy_main_path;

IMY_API const char* imy_version(void);

/* Message describing the most recent failure on this thread. */
IMY_API const char* imy_last_error(void);

/* --- graphs ------------------------------------------------------------ */

/* Reads a citing<TAB>cited edge list plus an optional id,label,year CSV.
 * Pass NULL for nodes_path to skip metadata. */
IMY_API imy_status imy_graph_read(const char* edges_path, const char* nodes_path,
                                  imy_graph** out);
IMY_API imy_status imy_graph_build(const char* const* tails, const char* const* heads,
                                   size_t n_edges, imy_graph** out);
IMY_API void imy_graph_free(imy_graph* graph);
IMY_API size_t imy_graph_node_count(const imy_graph* graph);
IMY_API size_t imy_graph_edge_count(const imy_graph* graph);
IMY_API size_t imy_graph_warning_count(const imy_graph* graph);
IMY_API const char* imy_graph_warning(const imy_graph* graph, size_t i);

/* --- source-target closures -------------------------------------------- */

IMY_API imy_status imy_closure_create(const imy_graph* graph, const char* source_id,
                                      const char* target_id, imy_closure** out);
IMY_API void imy_closure_free(imy_closure* closure);
IMY_API size_t imy_closure_node_count(const imy_closure* closure);
IMY_API size_t imy_closure_edge_count(const imy_closure* closure);
IMY_API size_t imy_closure_source(const imy_closure* closure);
IMY_API size_t imy_closure_target(const imy_closure* closure);
IMY_API const char* imy_closure_node_id(const imy_closure* closure, size_t node);
IMY_API const char* imy_closure_node_label(const imy_closure* closure, size_t node);
/* Returns IMY_ERR_INVALID_ARGUMENT when the node has no year. */
IMY_API imy_status imy_closure_node_year(const imy_closure* closure, size_t node, int* year);
IMY_API size_t imy_closure_citation_count(const imy_closure* closure, size_t node);
IMY_API size_t imy_closure_reference_count(const imy_closure* closure, size_t node);
IMY_API imy_status imy_closure_edge(const imy_closure* closure, size_t edge,
                                    size_t* tail, size_t* head);
/* Percolation starting point p = n / (2m). */
IMY_API double imy_closure_suggest_p(const imy_closure* closure);

/* --- intermediacy scores ------------------------------------------------ */

IMY_API imy_status imy_exact_scores(const imy_closure* closure, double p,
                                    uint32_t max_edges, imy_scores** out);
IMY_API imy_status imy_mc_scores(const imy_closure* closure, double p, uint64_t samples,
                                 uint64_t seed, unsigned workers, imy_scores** out);
IMY_API void imy_scores_free(imy_scores* scores);
IMY_API imy_method imy_scores_method(const imy_scores* scores);
IMY_API double imy_scores_p(const imy_scores* scores);
IMY_API uint64_t imy_scores_samples(const imy_scores* scores);
IMY_API uint64_t imy_scores_seed(const imy_scores* scores);
IMY_API double imy_scores_value(const imy_scores* scores, size_t node);
/* NaN for exact scores. */
IMY_API double imy_scores_stderr(const imy_scores* scores, size_t node);

/* Probability of an active source-target path, with standard error. */
IMY_API imy_status imy_st_probability(const imy_closure* closure, double p,
                                      uint64_t samples, uint64_t seed, unsigned workers,
                                      double* value, double* stderr_out);
IMY_API imy_status imy_st_probability_exact(const imy_closure* closure, double p,
                                            uint32_t max_edges, double* value);

/* --- combinatorial statistics and baselines ----------------------------- */

IMY_API imy_status imy_path_stats_create(const imy_closure* closure, imy_path_stats** out);
IMY_API void imy_path_stats_free(imy_path_stats* stats);
/* Big-integer counts are written as decimal strings; the return value is
 * the full length (snprintf-style), so len > return value means no
 * truncation. */
IMY_API size_t imy_path_stats_paths_from_source(const imy_path_stats* stats, size_t node,
                                                char* buf, size_t len);
IMY_API size_t imy_path_stats_paths_to_target(const imy_path_stats* stats, size_t node,
                                              char* buf, size_t len);
IMY_API size_t imy_path_stats_edge_spc(const imy_path_stats* stats, size_t edge,
                                       char* buf, size_t len);
IMY_API uint32_t imy_path_stats_shortest_len(const imy_path_stats* stats, size_t node);
IMY_API uint32_t imy_path_stats_independent_paths(const imy_path_stats* stats, size_t node);

typedef enum imy_main_path_variant {
    IMY_MAIN_PATH_LOCAL = 0,
    IMY_MAIN_PATH_GLOBAL = 1
} imy_main_path_variant;

IMY_API imy_status imy_main_path_create(const imy_closure* closure,
                                        imy_main_path_variant variant, imy_main_path** out);
IMY_API void imy_main_path_free(imy_main_path* path);
IMY_API size_t imy_main_path_length(const imy_main_path* path);
IMY_API size_t imy_main_path_edge(const imy_main_path* path, size_t i);
IMY_API size_t imy_main_path_total_spc(const imy_main_path* path, char* buf, size_t len);

/* Expected number of active s-t paths through each node; out must hold one
 * double per closure node. */
IMY_API imy_status imy_expected_path_counts(const imy_closure* closure, double p, double* out);

/* Effective s-t resistance over the unit-resistor network of s-t paths
 * through the given node. */
IMY_API imy_status imy_resistance_through(const imy_closure* closure, size_t node, double* out);

/* --- analysis helpers --------------------------------------------------- */

typedef enum imy_correlation_kind {
    IMY_CORRELATION_PEARSON = 0,
    IMY_CORRELATION_SPEARMAN = 1
} imy_correlation_kind;

/* Writes NaN for undefined (zero-variance) correlations. */
IMY_API imy_status imy_correlation(imy_correlation_kind kind, const double* x,
                                   const double* y, size_t n, double* out);

/* The p at which a direct edge matches k indirect length-2 paths. */
IMY_API imy_status imy_equivalence_threshold(unsigned k, double* out);

/* st-path probability per grid point; exact when the closure fits under
 * max_edges, Monte Carlo otherwise. methods/stderrs entries may be NULL. */
IMY_API imy_status imy_sweep(const imy_closure* closure, const double* grid, size_t n_points,
                             uint64_t samples, uint64_t seed, unsigned workers,
                             uint32_t max_edges, double* values, double* stderrs,
                             int* methods);

#ifdef __cplusplus
}
#endif

#endif /* INTERMEDIACY_H */
