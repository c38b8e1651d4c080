/* C interface to the cwelch library: frame analysis, Welch-type bound
 * evaluation, and low-coherence optimization behind opaque handles.
 *
 * Conventions:
 *   - every function returns a cwelch_status; CWELCH_OK is 0
 *   - output strings are heap-allocated JSON/CSV, released with
 *     cwelch_string_free
 *   - frames are opaque cwelch_frame handles, released with cwelch_frame_free
 *   - cwelch_last_error() describes the most recent failure on this thread
 */
#ifndef CWELCH_H
#define CWELCH_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cwelch_status {
  CWELCH_OK = 0,
  CWELCH_ERR_INVALID_ARGUMENT = 1,
  CWELCH_ERR_SINGULAR = 2,
  CWELCH_ERR_NUMERIC = 3,
  CWELCH_ERR_PARSE = 4,
  CWELCH_ERR_IO = 5,
  CWELCH_ERR_INTERNAL = 6
} cwelch_status;

typedef struct cwelch_frame cwelch_frame;

const char* cwelch_version(void);
const char* cwelch_status_name(cwelch_status status);
const char* cwelch_last_error(void);
void cwelch_string_free(char* s);

/* ---- frames ---------------------------------------------------------- */

/* Builtin family from a compact "name:params" spec, e.g. "cos_sin:513",
 * "onb:3", "simplex_etf:4", "harmonic:7,3", "sic_d2",
 * "random_unit:12,4,C,7", "cp_monte_carlo:2,C,20000,42". */
cwelch_status cwelch_frame_builtin(const char* spec, cwelch_frame** out);

/* Frame file JSON (see README for the schema). */
cwelch_status cwelch_frame_parse(const char* json_text, cwelch_frame** out);
cwelch_status cwelch_frame_load(const char* path, cwelch_frame** out);
cwelch_status cwelch_frame_to_json(const cwelch_frame* frame, char** json_out);
cwelch_status cwelch_frame_save(const cwelch_frame* frame, const char* path);
void cwelch_frame_free(cwelch_frame* frame);

int cwelch_frame_dim(const cwelch_frame* frame);
long long cwelch_frame_node_count(const cwelch_frame* frame);
char cwelch_frame_field(const cwelch_frame* frame);
int cwelch_frame_normalized(const cwelch_frame* frame);
double cwelch_frame_total_mass(const cwelch_frame* frame);

/* Canonical dual {S^-1 tau_a}; CWELCH_ERR_SINGULAR when the family does not
 * span. */
cwelch_status cwelch_frame_canonical_dual(const cwelch_frame* frame, cwelch_frame** out);

/* Checks sum_a w_a omega_a tau_a^* = I; writes the Frobenius residual and a
 * 0/1 flag. */
cwelch_status cwelch_is_dual_pair(const cwelch_frame* tau, const cwelch_frame* omega,
                                  int* is_dual, double* residual);

/* Dual-pair bounds (sup form and dimension form) as a JSON report. */
cwelch_status cwelch_dual_bounds(const cwelch_frame* tau, const cwelch_frame* omega,
                                 char** json_out);

/* ---- analysis --------------------------------------------------------- */

typedef struct cwelch_analysis_options {
  const int* orders;   /* Welch orders m; NULL selects {1, 2, 3} */
  int n_orders;
  const double* ps;    /* p-th power bound exponents (> 2); NULL selects {4} */
  int n_ps;
  const double* rs;    /* trace-power exponents (> 0); NULL selects {2} */
  int n_rs;
  int include_matrix;  /* nonzero embeds the frame operator entries */
} cwelch_analysis_options;

/* Full JSON report: frame digest, frame operator, metrics, one entry per
 * bound, and an "all_satisfied" aggregate. NULL options select defaults. */
cwelch_status cwelch_analyze(const cwelch_frame* frame,
                             const cwelch_analysis_options* options, char** json_out);

/* CSV of |<t_i, t_j>| per distinct pair. */
cwelch_status cwelch_gram_csv(const cwelch_frame* frame, char** csv_out);

/* Discrete Welch bounds, packing bounds, the Gerzon bound and optional p-th
 * power bound floors for n unit vectors in field^d, as JSON. ps may be NULL. */
cwelch_status cwelch_bounds_table(int n, int d, char field, const int* orders, int n_orders,
                                  const double* ps, int n_ps, char** json_out);

/* ---- optimization ----------------------------------------------------- */

typedef struct cwelch_optimize_options {
  int n;
  int d;
  char field;                 /* 'R' or 'C' */
  const char* objective;      /* "coherence" or "potential" */
  int m;                      /* potential order; 0 selects 1 */
  unsigned long long seed;
  int restarts;               /* 0 selects 4 */
  long long max_iters;        /* per restart; 0 selects 20000 */
  double step;                /* 0 selects 0.1 */
  double tol;                 /* 0 selects 1e-10 */
  int jobs;                   /* parallel restarts; 0 selects 1 */
} cwelch_optimize_options;

/* Runs the search; emits the run report as JSON and, when frame_out is not
 * NULL, the best configuration as a frame handle. */
cwelch_status cwelch_optimize(const cwelch_optimize_options* options, char** json_out,
                              cwelch_frame** frame_out);

/* Analytic-vs-finite-difference probe of the optimizer gradients.
 * objective is "coherence" or "potential"; writes the max relative component
 * error and returns CWELCH_OK when it is within 1e-5. */
cwelch_status cwelch_gradient_check(int n, int d, char field, const char* objective, int m,
                                    unsigned long long probe_seed, double* max_rel_error);

#ifdef __cplusplus
}
#endif

#endif /* CWELCH_H */
