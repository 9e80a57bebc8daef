#ifndef SWAPFREE_H
#define SWAPFREE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SWAPFREE_BUILDING_LIBRARY)
#define SF_API __declspec(dllexport)
#else
#define SF_API __declspec(dllimport)
#endif
#else
#define SF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sf_status {
  SF_OK = 0,
  SF_INVALID_ARGUMENT = 1,
  SF_DIMENSION_MISMATCH = 2,
  SF_INFEASIBLE = 3,
  SF_SOLVER_FAILURE = 4,
  SF_IO_ERROR = 5,
  SF_LIMIT_EXCEEDED = 6,
  SF_INTERNAL_ERROR = 7
} sf_status;

typedef struct sf_graph sf_graph;
typedef struct sf_problem sf_problem;
typedef struct sf_certificate sf_certificate;

/* Library version as "major.minor.patch". */
SF_API const char* sf_version(void);
SF_API const char* sf_status_name(sf_status status);

/* Message of the last failed call on this thread; "" when none. */
SF_API const char* sf_last_error(void);

/* Releases strings returned through char** out-parameters. */
SF_API void sf_string_free(char* s);

/* Hardware graphs. edges holds 2 * edge_count vertex indices. */
SF_API sf_status sf_graph_create(size_t n, const size_t* edges, size_t edge_count,
                                 sf_graph** out);
SF_API sf_status sf_graph_random(size_t n, double density, uint64_t seed, sf_graph** out);
/* kind: "complete", "path", "cycle", "star" or "empty". */
SF_API sf_status sf_graph_named(const char* kind, size_t n, sf_graph** out);
SF_API sf_status sf_graph_parse(const char* text, sf_graph** out);
SF_API sf_status sf_graph_read(const char* path, sf_graph** out);
SF_API sf_status sf_graph_format(const sf_graph* g, char** text);
SF_API size_t sf_graph_size(const sf_graph* g);
SF_API size_t sf_graph_edge_count(const sf_graph* g);
/* Writes 2 * edge_count indices. */
SF_API sf_status sf_graph_edges(const sf_graph* g, size_t* edges);
SF_API int sf_graph_is_connected(const sf_graph* g);
SF_API void sf_graph_free(sf_graph* g);

/* Portfolio problems. Matrices are row-major. n_qubits = 0 uses the asset count. */
SF_API sf_status sf_problem_from_correlation(const double* corr, size_t assets, size_t n_qubits,
                                             size_t k, double alpha, double beta,
                                             sf_problem** out);
SF_API sf_status sf_problem_synthetic(size_t assets, size_t n_qubits, size_t k, double alpha,
                                      double beta, uint64_t seed, sf_problem** out);
/* returns_mode = 0: correlation CSV with a label header; 1: one asset per row. */
SF_API sf_status sf_problem_load(const char* path, int returns_mode, size_t n_qubits, size_t k,
                                 double alpha, double beta, sf_problem** out);
SF_API size_t sf_problem_size(const sf_problem* p);
SF_API size_t sf_problem_k(const sf_problem* p);
/* Writes the n x n objective matrix. */
SF_API sf_status sf_problem_matrix(const sf_problem* p, double* out);
/* Exact weight-k minimum over the assets; selection bit i is z_i. Either pointer may be NULL. */
SF_API sf_status sf_problem_optimum(const sf_problem* p, double* value, uint64_t* selection);
SF_API void sf_problem_free(sf_problem* p);

/* Certificates. permutation[v] is the logical index placed on vertex v. */
SF_API sf_status sf_solve_fixed(const sf_problem* p, const sf_graph* g,
                                const size_t* permutation, double tol, sf_certificate** out);
/* name: perron-disc, perron-conn, laplacian-conn, crand-disc, prand-disc,
   crand-conn or prand-conn. */
SF_API sf_status sf_solve_heuristic(const sf_problem* p, const sf_graph* g, const char* name,
                                    size_t samples, uint64_t seed, double tol,
                                    sf_certificate** out);
SF_API sf_status sf_solve_brute_force(const sf_problem* p, const sf_graph* g, int allow_large,
                                      size_t jobs, double tol, sf_certificate** out);
SF_API double sf_certificate_lambda(const sf_certificate* c);
SF_API double sf_certificate_dual_value(const sf_certificate* c);
SF_API double sf_certificate_gap(const sf_certificate* c);
/* "optimal", "max_iter", "infeasible" or "stopped". */
SF_API const char* sf_certificate_status(const sf_certificate* c);
SF_API size_t sf_certificate_size(const sf_certificate* c);
SF_API sf_status sf_certificate_permutation(const sf_certificate* c, size_t* out);
SF_API sf_status sf_certificate_x(const sf_certificate* c, double* out);
SF_API sf_status sf_certificate_dual(const sf_certificate* c, double* out);
SF_API sf_status sf_certificate_to_json(const sf_certificate* c, char** json);
SF_API void sf_certificate_free(sf_certificate* c);

typedef struct sf_metrics {
  double lambda_norm;     /* lambda / operator norm of the objective */
  double optimum;         /* exact weight-k minimum */
  double algorithm_value; /* objective value recovered from X */
  double opt_gap;
  size_t swaps;           /* router estimate for the certificate's placement */
  double p;               /* depolarizing probability */
  double baseline_value;
  double baseline_gap;
} sf_metrics;

/* use_argmin = 0 scores X by the top 1% pool, otherwise by its exact minimizer. */
SF_API sf_status sf_evaluate(const sf_problem* p, const sf_graph* g, const sf_certificate* c,
                             int use_argmin, double cnot_error_rate, sf_metrics* out);

typedef struct sf_baseline {
  size_t swaps;
  double p;
  double optimum;
  double expected_value;
  double gap;
} sf_baseline;

/* Noisy baseline for a placement; permutation NULL means the identity. */
SF_API sf_status sf_baseline_evaluate(const sf_problem* p, const sf_graph* g,
                                      const size_t* permutation, double cnot_error_rate,
                                      sf_baseline* out);

typedef struct sf_qcheck_report {
  size_t trials;
  double identity_residual;
  double printed_residual;
  double leakage;
  double norm_drift;
  double dicke_error;
  double swap_error;
  int passed;
} sf_qcheck_report;

SF_API sf_status sf_qcheck(size_t n, size_t k, size_t trials, uint64_t seed,
                           sf_qcheck_report* out);

typedef void (*sf_progress_fn)(size_t rows_done, size_t rows_total, void* user);

/* Runs the sweep described by a JSON config. jobs = 0 keeps the config value.
   Writes the CSV and, when summary_path is not NULL, the summary JSON. */
SF_API sf_status sf_sweep_run(const char* config_json, size_t jobs, const char* csv_path,
                              const char* summary_path, sf_progress_fn progress, void* user,
                              size_t* rows_written);
/* Validates a config without running it. */
SF_API sf_status sf_sweep_validate(const char* config_json, size_t* rows);

#ifdef __cplusplus
}
#endif

#endif
