/* ecgkit.h - public C API of the ecgkit shared library.
 *
 * ecgkit extracts nonlinear complexity and cross-channel features from
 * multi-lead ECG records, runs nonparametric group comparisons, and trains
 * logistic-regression classifiers on the resulting feature tables.
 *
 * The API follows the usual C conventions: opaque handles, integer status
 * codes (ECGKIT_OK == 0 on success), caller-owned output buffers. All
 * functions are thread-safe as long as each handle is used from one thread
 * at a time. Failure details beyond the status code are available from
 * ecgkit_last_error(), which is thread-local.
 */
#ifndef ECGKIT_H
#define ECGKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ECGKIT_API __declspec(dllexport)
#else
#define ECGKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* ---- status codes ------------------------------------------------------ */

typedef enum ecgkit_status {
  ECGKIT_OK = 0,
  ECGKIT_ERR_ARGUMENT = 1,   /* bad pointer, size, or parameter value       */
  ECGKIT_ERR_CONFIG = 2,     /* missing/invalid configuration               */
  ECGKIT_ERR_DATA = 3,       /* unreadable, malformed, or inconsistent data */
  ECGKIT_ERR_NUMERIC = 4,    /* numerical failure (no convergence etc.)     */
  ECGKIT_ERR_IO = 5,         /* filesystem error                            */
  ECGKIT_ERR_DEGENERATE = 6  /* degenerate input (flat signal, one class)   */
} ecgkit_status;

ECGKIT_API const char* ecgkit_status_message(int status);

/* Thread-local message describing the most recent failure in this thread.
 * Never NULL; empty string when no error has occurred. */
ECGKIT_API const char* ecgkit_last_error(void);

ECGKIT_API const char* ecgkit_version(void);

/* ---- run configuration -------------------------------------------------- */

/* A configuration is a flat set of section-prefixed key=value entries
 * (e.g. "rqa.target_rr" = "0.10"). Unset keys fall back to built-in
 * defaults; ecgkit_config_get reports the effective value. */
typedef struct ecgkit_config ecgkit_config;

ECGKIT_API ecgkit_config* ecgkit_config_create(void);
ECGKIT_API void ecgkit_config_free(ecgkit_config* cfg);

/* Merge key=value lines from a config file ('#' comments allowed). */
ECGKIT_API int ecgkit_config_load_file(ecgkit_config* cfg, const char* path);
ECGKIT_API int ecgkit_config_set(ecgkit_config* cfg, const char* key,
                                 const char* value);

/* Copies the effective value (set or default) into buf, NUL-terminated.
 * Returns ECGKIT_ERR_ARGUMENT for unknown keys or undersized buffers. */
ECGKIT_API int ecgkit_config_get(const ecgkit_config* cfg, const char* key,
                                 char* buf, size_t buflen);

/* Stable 64-bit hash of the effective configuration; stamped into every
 * output file so artifacts from different runs can be told apart. */
ECGKIT_API uint64_t ecgkit_config_hash(const ecgkit_config* cfg);

/* ---- pipeline stages ----------------------------------------------------
 * Each stage reads its inputs and writes its outputs according to the
 * configuration (data.dir, out.dir, ...). See README for the key list.
 */

ECGKIT_API int ecgkit_run_extract(const ecgkit_config* cfg);
ECGKIT_API int ecgkit_run_stats(const ecgkit_config* cfg);
ECGKIT_API int ecgkit_run_train(const ecgkit_config* cfg);
/* extract + stats + train over all feature sets, plus the 5-class task. */
ECGKIT_API int ecgkit_run_report(const ecgkit_config* cfg);

/* ---- single-record access ----------------------------------------------- */

typedef struct ecgkit_record ecgkit_record;

/* Read one record. format: "wfdb" (path names the .hea file) or "csv"
 * (one column per lead, header row of lead names; sampling_rate_hint
 * applies, pass 0 for the 100 Hz default). */
ECGKIT_API int ecgkit_record_read(const char* path, const char* format,
                                  double sampling_rate_hint,
                                  ecgkit_record** out);
ECGKIT_API void ecgkit_record_free(ecgkit_record* rec);

ECGKIT_API int ecgkit_record_num_leads(const ecgkit_record* rec);
ECGKIT_API size_t ecgkit_record_num_samples(const ecgkit_record* rec);
ECGKIT_API double ecgkit_record_sampling_rate(const ecgkit_record* rec);
ECGKIT_API const char* ecgkit_record_lead_name(const ecgkit_record* rec,
                                               int lead);
/* Copies min(buflen, num_samples) samples of the given lead (millivolts). */
ECGKIT_API int ecgkit_record_samples(const ecgkit_record* rec, int lead,
                                     double* buf, size_t buflen);

/* ---- preprocessing ------------------------------------------------------ */

/* Least-squares polynomial detrend (indices rescaled to [-1,1]); the
 * residual is written to out (length n). */
ECGKIT_API int ecgkit_detrend(const double* x, size_t n, int order,
                              double* out);

/* Zero mean, unit population standard deviation. Fails with
 * ECGKIT_ERR_DEGENERATE on flat input. */
ECGKIT_API int ecgkit_standardize(const double* x, size_t n, double* out);

/* R-peak detection on a detrended, standardized signal. Writes up to
 * max_peaks indices; *n_peaks receives the number found. */
ECGKIT_API int ecgkit_detect_r_peaks(const double* x, size_t n,
                                     double sampling_rate, size_t* peaks,
                                     size_t max_peaks, size_t* n_peaks);

/* ---- complexity measures ------------------------------------------------ */

ECGKIT_API int ecgkit_higuchi_fd(const double* x, size_t n, int kmax,
                                 double* out);
ECGKIT_API int ecgkit_approx_entropy(const double* x, size_t n, int m,
                                     double r_multiple, double* out);
ECGKIT_API int ecgkit_sample_entropy(const double* x, size_t n, int m,
                                     double r, double* out);
ECGKIT_API int ecgkit_permutation_entropy(const double* x, size_t n, int m,
                                          int tau, int normalize, double* out);
ECGKIT_API int ecgkit_lz_complexity(const double* x, size_t n, double* out);

/* Multiscale entropy over scales 1..n_scales. curve must hold n_scales
 * entries; unavailable scales are written as NaN. scalar receives the mean
 * over available scales. */
ECGKIT_API int ecgkit_multiscale_entropy(const double* x, size_t n,
                                         int n_scales, int m,
                                         double r_multiple, double* curve,
                                         double* scalar);

/* ---- recurrence quantification ------------------------------------------ */

typedef struct ecgkit_rqa_result {
  double recurrence_rate;
  double det;
  double lam;
  double dbyl; /* NaN when LAM == 0 */
  double tt;   /* NaN when no vertical line >= v_min */
  double d_ent;
  double v_ent;
  int tau; /* embedding delay actually used */
} ecgkit_rqa_result;

/* Delay-embeds x (dimension m, delay tau; tau == 0 selects the first
 * autocorrelation minimum, capped at 20, fallback 5), thresholds pairwise
 * distances at the target recurrence rate, and quantifies line structures. */
ECGKIT_API int ecgkit_rqa(const double* x, size_t n, int m, int tau,
                          double target_rr, int l_min, int v_min,
                          ecgkit_rqa_result* out);

/* ---- cross-channel measures ---------------------------------------------- */

ECGKIT_API int ecgkit_spearman(const double* x, const double* y, size_t n,
                               double* out);
/* Equal-width joint-histogram mutual information, natural log units. */
ECGKIT_API int ecgkit_mutual_information(const double* x, const double* y,
                                         size_t n, int bins, double* out);

/* ---- hypothesis tests ---------------------------------------------------- */

typedef struct ecgkit_test_result {
  double statistic; /* z for Mann-Whitney, H for Kruskal-Wallis */
  double p_value;
} ecgkit_test_result;

/* Two-sided Mann-Whitney test of a vs b. z < 0 means group a has the
 * higher mean rank. Exact enumeration for small tie-free samples, normal
 * approximation with tie correction and continuity correction otherwise. */
ECGKIT_API int ecgkit_mann_whitney(const double* a, size_t na, const double* b,
                                   size_t nb, ecgkit_test_result* out);

/* Tie-corrected Kruskal-Wallis H across n_groups groups laid out
 * back-to-back in values; group_sizes gives each group's length. */
ECGKIT_API int ecgkit_kruskal_wallis(const double* values,
                                     const size_t* group_sizes,
                                     size_t n_groups,
                                     ecgkit_test_result* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ECGKIT_H */
