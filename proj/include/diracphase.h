/* diracphase: gauge-invariant Dirac phase statistics along noisy trajectories
 * in static magnetic fields.
 *
 * C interface to the simulation core. Handles are opaque; every function
 * returns a dp_status, with DP_OK == 0 on success. Functions that can fail
 * with diagnostics accept an optional error buffer that receives a
 * NUL-terminated message.
 */
#ifndef DIRACPHASE_H
#define DIRACPHASE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dp_status {
  DP_OK = 0,
  DP_ERROR_INVALID_ARGUMENT = 1, /* precondition violated */
  DP_ERROR_PARSE = 2,            /* malformed config or CSV input */
  DP_ERROR_SINGULAR_REGION = 3,  /* evaluation inside an excluded field region */
  DP_ERROR_RUN_ABORTED = 4,      /* rejection rate above the abort threshold */
  DP_ERROR_IO = 5,               /* file could not be read or written */
  DP_ERROR_INTERNAL = 6
} dp_status;

const char* dp_status_name(dp_status status);
const char* dp_version(void);

/* ------------------------------------------------------------------ config */

/* Experiment description parsed from flat "key = value" text; see the
 * project README for the grammar. */
typedef struct dp_config dp_config;

dp_status dp_config_parse(const char* text, dp_config** out_config, char* err, size_t err_len);
dp_status dp_config_parse_file(const char* path, dp_config** out_config, char* err,
                               size_t err_len);
void dp_config_free(dp_config* config);

uint64_t dp_config_samples(const dp_config* config);
uint64_t dp_config_seed(const dp_config* config);

/* ---------------------------------------------------------------- ensembles */

typedef struct dp_ensemble dp_ensemble;

typedef struct dp_moments {
  double mean;
  double variance; /* unbiased */
  double stderr_mean;
  double stderr_variance;
  double sigma; /* sqrt(variance) */
  double stderr_sigma;
  uint64_t accepted;
  uint64_t rejected;
} dp_moments;

/* Runs config->samples trajectories. workers <= 0 selects the hardware
 * concurrency; the ensemble is bit-identical for every worker count. */
dp_status dp_run(const dp_config* config, int workers, dp_ensemble** out_ensemble, char* err,
                 size_t err_len);
void dp_ensemble_free(dp_ensemble* ensemble);

uint64_t dp_ensemble_accepted(const dp_ensemble* ensemble);
uint64_t dp_ensemble_rejected(const dp_ensemble* ensemble);
/* pos indexes accepted samples in trajectory order, 0 <= pos < accepted. */
dp_status dp_ensemble_sample(const dp_ensemble* ensemble, uint64_t pos, uint64_t* out_index,
                             double* out_phase);

/* Bootstrap moment estimate using the config's resample count and a resample
 * seed derived from its master seed. */
dp_status dp_ensemble_moments(const dp_ensemble* ensemble, dp_moments* out_moments);
/* Explicit control over the bootstrap (resamples >= 2 for standard errors). */
dp_status dp_ensemble_moments_ex(const dp_ensemble* ensemble, uint32_t resamples,
                                 uint64_t resample_seed, dp_moments* out_moments);

dp_status dp_ensemble_write_csv(const dp_ensemble* ensemble, const char* path);
dp_status dp_summary_write_csv(const dp_moments* moments, const char* path);

/* ------------------------------------------------------------------- sweeps */

typedef struct dp_sweep dp_sweep;

/* One ensemble per N value (positive, strictly increasing). For OU noise the
 * operational time of point k is n_values[k] / gamma; for Wiener noise the N
 * value is the operational time itself. */
dp_status dp_sweep_run(const dp_config* config, const double* n_values, size_t n_count,
                       int workers, dp_sweep** out_sweep, char* err, size_t err_len);
void dp_sweep_free(dp_sweep* sweep);

size_t dp_sweep_size(const dp_sweep* sweep);
dp_status dp_sweep_point(const dp_sweep* sweep, size_t index, double* out_n, double* out_sigma,
                         double* out_sigma_stderr);

dp_status dp_sweep_write_csv(const dp_sweep* sweep, const char* path);
dp_status dp_sweep_read_csv(const char* path, dp_sweep** out_sweep, char* err, size_t err_len);

/* ---------------------------------------------------------------------- fit */

typedef struct dp_fit {
  double a;
  double b;
  double residual_norm;
  double stderr_a;
  double stderr_b;
} dp_fit;

/* Ordinary least squares of sigma against (sqrt(N), 1); needs >= 3 points. */
dp_status dp_fit_sqrt_law(const dp_sweep* sweep, dp_fit* out_fit);
dp_status dp_fit_write_csv(const dp_fit* fit, const char* path);

/* ------------------------------------------------------------- verification */

typedef void (*dp_verify_line_fn)(void* user, const char* line);

/* Runs the acceptance suite (quick != 0 shrinks the sample counts), feeding
 * one line per criterion to the callback. out_failures receives the number
 * of failed criteria. */
dp_status dp_verify(int quick, int workers, dp_verify_line_fn line_callback, void* user,
                    int* out_failures);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DIRACPHASE_H */
