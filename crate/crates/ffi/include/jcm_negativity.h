#ifndef JCM_NEGATIVITY_H
#define JCM_NEGATIVITY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum JcmStatus {
  JCM_OK = 0,
  JCM_ERR_NULL_POINTER = 1,
  JCM_ERR_INVALID_PARAMETER = 2,
  JCM_ERR_INVALID_INPUT = 3,
  JCM_ERR_CONFIG = 4,
  JCM_ERR_ORACLE_MISMATCH = 5,
  JCM_ERR_IO = 6,
  JCM_ERR_NO_CONVERGENCE = 7,
  JCM_ERR_BUFFER_TOO_SMALL = 8,
  JCM_ERR_PANIC = 9,
} JcmStatus;

/**
 * Reference parameter sets.
 */
typedef enum JcmPreset {
  JCM_PRESET_FIG1 = 1,
  JCM_PRESET_FIG2 = 2,
  JCM_PRESET_FIG3 = 3,
  JCM_PRESET_FIG4 = 4,
  JCM_PRESET_FIG5 = 5,
} JcmPreset;

/**
 * Model parameters, truncated coherent field and cutoff.
 */
typedef struct JcmModel JcmModel;

/**
 * Records of a completed sweep, in ascending time.
 */
typedef struct JcmSweep JcmSweep;

/**
 * One time sample. Entropies are in nats.
 */
typedef struct JcmMeasureRecord {
  double t;
  double negativity;
  double mutual_entropy;
  double s_atom;
  double s_field;
  double s_joint;
  double classical_bound;
  double truncation_mass_lost;
  uint32_t joint_rank;
  uint32_t partial_transpose_support;
} JcmMeasureRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *jcm_last_error_message(void);

/**
 * Creates a model with a coherent initial field `alpha_re + i alpha_im`.
 * The Fock cutoff is the smallest one with tail mass below
 * `tail_tolerance`, plus `buffer` levels.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum JcmStatus jcm_model_new(double g, double omega_a, double delta, double atom_ground_weight, double alpha_re, double alpha_im, double tail_tolerance, size_t buffer, struct JcmModel **out);

/**
 * Creates a model from one of the reference parameter sets.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum JcmStatus jcm_model_from_preset(enum JcmPreset preset, struct JcmModel **out);

/**
 * Releases a model. NULL is ignored.
 *
 * # Safety
 * `model` must be NULL or a handle from this library not freed before.
 */
void jcm_model_free(struct JcmModel *model);

/**
 * Highest retained photon number; the field dimension is this plus one.
 * Returns 0 for NULL.
 *
 * # Safety
 * `model` must be NULL or a live handle.
 */
size_t jcm_model_n_max(const struct JcmModel *model);

/**
 * Evaluates every measure at time `t`.
 *
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum JcmStatus jcm_model_measure(const struct JcmModel *model, double t, struct JcmMeasureRecord *out);

/**
 * Writes the joint density matrix at time `t` into `buffer` as row-major
 * interleaved `(re, im)` pairs. The matrix dimension is
 * `2 * (n_max + 1)`, atom outer (excited first) and photon number inner, so
 * `buffer_len` must be at least `2 * dim * dim`.
 *
 * # Safety
 * `model` must be a live handle; `buffer` must point to `buffer_len` doubles.
 */
enum JcmStatus jcm_model_joint_density(const struct JcmModel *model, double t, double *buffer, size_t buffer_len);

/**
 * Runs a preset over `[0, t_end]` with `n_points` samples.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum JcmStatus jcm_sweep_run_preset(enum JcmPreset preset, double t_end, size_t n_points, bool oracle_check, struct JcmSweep **out);

/**
 * Runs the sweep described by a `key = value` config file. The file's
 * `output` key is ignored; use [`jcm_sweep_write_csv`].
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum JcmStatus jcm_sweep_run_config_file(const char *path, struct JcmSweep **out);

/**
 * Number of records; 0 for NULL.
 *
 * # Safety
 * `sweep` must be NULL or a live handle.
 */
size_t jcm_sweep_len(const struct JcmSweep *sweep);

/**
 * Copies record `index` into `out`.
 *
 * # Safety
 * `sweep` must be a live handle and `out` writable.
 */
enum JcmStatus jcm_sweep_get(const struct JcmSweep *sweep, size_t index, struct JcmMeasureRecord *out);

/**
 * Writes the sweep as CSV to `path`.
 *
 * # Safety
 * `sweep` must be a live handle; `path` a NUL-terminated string.
 */
enum JcmStatus jcm_sweep_write_csv(const struct JcmSweep *sweep, const char *path);

/**
 * Releases a sweep. NULL is ignored.
 *
 * # Safety
 * `sweep` must be NULL or a handle from this library not freed before.
 */
void jcm_sweep_free(struct JcmSweep *sweep);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JCM_NEGATIVITY_H */
