#ifndef DOUGHSLIT_H
#define DOUGHSLIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum DsStatus {
  DS_STATUS_OK = 0,
  DS_STATUS_NULL_POINTER = 1,
  DS_STATUS_INVALID_UTF8 = 2,
  /**
   * An output buffer length does not match the data.
   */
  DS_STATUS_BUFFER_SIZE = 3,
  DS_STATUS_INVALID_PARAMETER = 4,
  DS_STATUS_UNDER_RESOLVED = 5,
  DS_STATUS_SOLVER_FAILURE = 6,
  DS_STATUS_DEGENERATE = 7,
  DS_STATUS_LENGTH_MISMATCH = 8,
  DS_STATUS_TOO_FEW_BINS = 9,
  DS_STATUS_SPACING_UNDEFINED = 10,
  DS_STATUS_EMPTY_PROFILE = 11,
  DS_STATUS_PARSE = 12,
  DS_STATUS_FORMAT = 13,
  DS_STATUS_IO = 14,
  /**
   * A Rust panic was caught at the boundary.
   */
  DS_STATUS_INTERNAL = 15,
} DsStatus;

typedef enum DsDoughMode {
  DS_DOUGH_MODE_INTERFERENCE = 0,
  DS_DOUGH_MODE_NO_INTERFERENCE = 1,
} DsDoughMode;

/**
 * Dough-model parameters, edited with [`ds_dough_config_set`].
 */
typedef struct DsDoughConfig DsDoughConfig;

/**
 * A finished dough run.
 */
typedef struct DsDoughRun DsDoughRun;

/**
 * Simulation parameters, edited with [`ds_sim_config_set`].
 */
typedef struct DsSimConfig DsSimConfig;

/**
 * A wave packet evolving under the Crank–Nicolson solver.
 */
typedef struct DsSimulation DsSimulation;

/**
 * Snapshot of a running simulation.
 */
typedef struct DsSimulationInfo {
  size_t n_x;
  size_t n_y;
  size_t step;
  double time;
  double norm;
} DsSimulationInfo;

/**
 * Fringe metrics of a dough histogram. Undefined values are NaN.
 */
typedef struct DsFringeMetrics {
  size_t n_peaks;
  double spacing_mean;
  double spacing_cv;
  double visibility;
  bool fringed;
} DsFringeMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ds_version(void);

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call into the library on this thread.
 */
const char *ds_last_error_message(void);

/**
 * Static name of a status code, e.g. `"solver_failure"`.
 */
const char *ds_status_name(enum DsStatus status);

/**
 * Default simulation parameters.
 */
enum DsStatus ds_sim_config_new(struct DsSimConfig **out);

/**
 * Sets one parameter by its config-file key, e.g. `("dt", "1e-4")`.
 */
enum DsStatus ds_sim_config_set(struct DsSimConfig *cfg, const char *key, const char *value);

void ds_sim_config_free(struct DsSimConfig *cfg);

/**
 * Validates `cfg` and prepares the initial packet at step 0.
 */
enum DsStatus ds_simulation_new(const struct DsSimConfig *cfg, struct DsSimulation **out);

/**
 * Advances by `n_steps` time steps. On failure the state stays at the last
 * completed step.
 */
enum DsStatus ds_simulation_step(struct DsSimulation *sim, size_t n_steps);

enum DsStatus ds_simulation_info(const struct DsSimulation *sim, struct DsSimulationInfo *out);

/**
 * Copies the complex field, row-major with `y` fastest; `len` must be
 * `n_x * n_y`.
 */
enum DsStatus ds_simulation_field(const struct DsSimulation *sim,
                                  double *re,
                                  double *im,
                                  size_t len);

/**
 * Copies `|psi|`, same layout as [`ds_simulation_field`].
 */
enum DsStatus ds_simulation_modulus(const struct DsSimulation *sim, double *out, size_t len);

/**
 * Normalized screen intensity at the configured screen column; `len` must be
 * `n_y`.
 */
enum DsStatus ds_simulation_screen_profile(const struct DsSimulation *sim,
                                           double *y,
                                           double *probability,
                                           size_t len);

void ds_simulation_free(struct DsSimulation *sim);

/**
 * Default dough parameters for `mode`.
 */
enum DsStatus ds_dough_config_new(enum DsDoughMode mode, struct DsDoughConfig **out);

/**
 * Sets one parameter by its config-file key, e.g. `("trials", "500")`.
 */
enum DsStatus ds_dough_config_set(struct DsDoughConfig *cfg, const char *key, const char *value);

void ds_dough_config_free(struct DsDoughConfig *cfg);

/**
 * Runs every trial of `cfg`. Deterministic for a given config.
 */
enum DsStatus ds_dough_run_new(const struct DsDoughConfig *cfg, struct DsDoughRun **out);

/**
 * Number of recorded trials (and arrivals).
 */
size_t ds_dough_run_trial_count(const struct DsDoughRun *run);

/**
 * Screen arrival position of every trial, in trial order.
 */
enum DsStatus ds_dough_run_arrivals(const struct DsDoughRun *run, double *out, size_t len);

/**
 * Number of bins of the combined screen histogram.
 */
size_t ds_dough_run_histogram_len(const struct DsDoughRun *run);

/**
 * Bin centres and counts of the combined screen histogram.
 */
enum DsStatus ds_dough_run_histogram(const struct DsDoughRun *run,
                                     double *centers,
                                     uint64_t *counts,
                                     size_t len);

/**
 * Fringe metrics of the combined histogram under the run's envelope and
 * peak settings.
 */
enum DsStatus ds_dough_run_fringes(const struct DsDoughRun *run, struct DsFringeMetrics *out);

void ds_dough_run_free(struct DsDoughRun *run);

/**
 * Similarity score in `[0, 100]` of two distributions sampled on the same
 * grid.
 */
enum DsStatus ds_similarity(const double *p, const double *q, size_t len, double *out);

/**
 * Closeness centrality of the proximity graph over `n` points at `radius`.
 * `weighted` selects Euclidean path lengths instead of hop counts.
 */
enum DsStatus ds_closeness_centrality(const double *xs,
                                      const double *ys,
                                      size_t n,
                                      double radius,
                                      bool weighted,
                                      double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DOUGHSLIT_H */
