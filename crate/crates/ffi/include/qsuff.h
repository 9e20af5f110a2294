#ifndef QSUFF_H
#define QSUFF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QsuffStatus {
  QsuffStatus_Ok = 0,
  QsuffStatus_NullPointer = 1,
  QsuffStatus_InvalidUtf8 = 2,
  QsuffStatus_Parse = 3,
  QsuffStatus_Validation = 4,
  QsuffStatus_QuadratureBudget = 5,
  QsuffStatus_Panic = 6,
} QsuffStatus;

typedef enum QsuffVerdict {
  QsuffVerdict_Sufficient = 0,
  QsuffVerdict_Borderline = 1,
  QsuffVerdict_NotSufficient = 2,
} QsuffVerdict;

/**
 * Opaque quantum channel.
 */
typedef struct QsuffChannel QsuffChannel;

/**
 * Opaque density matrix.
 */
typedef struct QsuffState QsuffState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qsuff_version(void);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *qsuff_last_error(void);

/**
 * Releases a string returned by the library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library and not freed yet.
 */
void qsuff_string_free(char *s);

/**
 * Parses a state document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QsuffStatus qsuff_state_from_json(const char *json, struct QsuffState **out);

/**
 * Builds a state from row-major real and imaginary parts of length `dim²`.
 *
 * # Safety
 * `re` and `im` must point to `dim * dim` readable doubles; `out` must be writable.
 */
enum QsuffStatus qsuff_state_new(size_t dim,
                                 const double *re,
                                 const double *im,
                                 struct QsuffState **out);

/**
 * # Safety
 * `state` must be null or a handle from this library not freed yet.
 */
void qsuff_state_free(struct QsuffState *state);

/**
 * Dimension of a state, or 0 for a null handle.
 *
 * # Safety
 * `state` must be null or a valid handle.
 */
size_t qsuff_state_dim(const struct QsuffState *state);

/**
 * Serializes a state as a JSON document; release with [`qsuff_string_free`].
 *
 * # Safety
 * `state` must be a valid handle; `out` must be writable.
 */
enum QsuffStatus qsuff_state_to_json(const struct QsuffState *state, char **out);

/**
 * Parses a channel document (Kraus or Choi form).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QsuffStatus qsuff_channel_from_json(const char *json, struct QsuffChannel **out);

/**
 * # Safety
 * `channel` must be null or a handle from this library not freed yet.
 */
void qsuff_channel_free(struct QsuffChannel *channel);

/**
 * Serializes a channel as a Kraus-form JSON document.
 *
 * # Safety
 * `channel` must be a valid handle; `out` must be writable.
 */
enum QsuffStatus qsuff_channel_to_json(const struct QsuffChannel *channel, char **out);

/**
 * `Φ(ρ)` as a new state handle.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum QsuffStatus qsuff_apply_channel(const struct QsuffChannel *channel,
                                     const struct QsuffState *state,
                                     struct QsuffState **out);

/**
 * Relative entropy in nats by the spectral route; `+∞` when the support
 * condition fails.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum QsuffStatus qsuff_relative_entropy(const struct QsuffState *rho,
                                        const struct QsuffState *sigma,
                                        double *out);

/**
 * Relative entropy by the integral route with adaptive Simpson quadrature.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum QsuffStatus qsuff_relative_entropy_integral(const struct QsuffState *rho,
                                                 const struct QsuffState *sigma,
                                                 double rel_tol,
                                                 size_t max_nodes,
                                                 double *out);

/**
 * Minimal Bayes error for prior `λ` on `σ`.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum QsuffStatus qsuff_optimal_bayes_error(const struct QsuffState *rho,
                                           const struct QsuffState *sigma,
                                           double lambda,
                                           double *out);

/**
 * Rotated Petz recovery channel at `t` (`t = 0` is the Petz map).
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum QsuffStatus qsuff_petz_recovery(const struct QsuffChannel *channel,
                                     const struct QsuffState *sigma,
                                     double t,
                                     struct QsuffChannel **out);

/**
 * Universal recovery channel averaged over `[−truncation, truncation]` with
 * `nodes` Simpson nodes.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum QsuffStatus qsuff_universal_recovery(const struct QsuffChannel *channel,
                                          const struct QsuffState *sigma,
                                          double truncation,
                                          size_t nodes,
                                          struct QsuffChannel **out);

/**
 * Choi-form JSON of the universal recovery channel.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum QsuffStatus qsuff_universal_recovery_json(const struct QsuffChannel *channel,
                                               const struct QsuffState *sigma,
                                               double truncation,
                                               size_t nodes,
                                               char **out);

/**
 * Sufficiency verdict on the default grid and time samples, with the
 * largest residual behind it.
 *
 * # Safety
 * Handles must be valid; `verdict` and `worst_residual` must be writable.
 */
enum QsuffStatus qsuff_sufficiency(const struct QsuffState *rho,
                                   const struct QsuffState *sigma,
                                   const struct QsuffChannel *channel,
                                   double threshold,
                                   enum QsuffVerdict *verdict,
                                   double *worst_residual);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QSUFF_H */
