#ifndef STEERCOH_H
#define STEERCOH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ScStatus {
  SC_STATUS_OK = 0,
  SC_STATUS_NULL_POINTER = 1,
  /**
   * Input matrix is not a density matrix.
   */
  SC_STATUS_INVALID_STATE = 2,
  /**
   * Dimension or parameter outside the supported range.
   */
  SC_STATUS_INVALID_ARGUMENT = 3,
  /**
   * The state has no defined value (e.g. pure product state).
   */
  SC_STATUS_UNDEFINED = 4,
  SC_STATUS_NOT_CONVERGED = 5,
  SC_STATUS_INTERNAL = 6,
} ScStatus;

/**
 * Opaque bipartite density matrix.
 */
typedef struct ScState ScState;

typedef struct ScMscResult {
  double value;
  /**
   * Bloch vector of the optimal projective outcome; zero when
   * `has_bloch_measurement` is 0 (non-qubit Alice).
   */
  double measurement[3];
  int32_t has_bloch_measurement;
  int32_t degenerate_path;
  int32_t converged;
} ScMscResult;

typedef struct ScEllipsoid {
  double center[3];
  /**
   * Descending.
   */
  double semiaxes[3];
  /**
   * `axes[i]` is the unit direction of `semiaxes[i]`.
   */
  double axes[3][3];
} ScEllipsoid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a state from row-major real and imaginary parts of a
 * `(dim_a*dim_b) x (dim_a*dim_b)` matrix.
 *
 * # Safety
 * `re` and `im` must point to `(dim_a*dim_b)^2` doubles; `out` must be writable.
 */
enum ScStatus sc_state_from_matrix(const double *re,
                                   const double *im,
                                   size_t dim_a,
                                   size_t dim_b,
                                   struct ScState **out);

/**
 * Werner state `p |psi-><psi-| + (1-p) 1/4`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ScStatus sc_state_werner(double p, struct ScState **out);

/**
 * `p |Psi><Psi| + (1-p)/4` with `|Psi> = cos(theta/2)|++> + sin(theta/2)|-->`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ScStatus sc_state_rho_p(double p, double theta, struct ScState **out);

/**
 * `t |++><++| + (1-t) |--><--|`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ScStatus sc_state_rho_c(double t, struct ScState **out);

/**
 * Maximally obese state whose Bob marginal has Bloch vector `(0, 0, b)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ScStatus sc_state_maximally_obese(double b, struct ScState **out);

/**
 * # Safety
 * `state` must come from this library and not be freed twice. Null is ignored.
 */
void sc_state_free(struct ScState *state);

/**
 * # Safety
 * `state` must be a live handle; `dim_a`, `dim_b` writable.
 */
enum ScStatus sc_state_dims(const struct ScState *state, size_t *dim_a, size_t *dim_b);

/**
 * Copies the row-major matrix into `re` and `im`, each of length `len`,
 * which must be at least `(dim_a*dim_b)^2`.
 *
 * # Safety
 * `re` and `im` must be writable for `len` doubles.
 */
enum ScStatus sc_state_matrix(const struct ScState *state, double *re, double *im, size_t len);

/**
 * New state with amplitude damping of strength `gamma` applied to Bob's qubit.
 *
 * # Safety
 * `state` must be a live handle; `out` writable.
 */
enum ScStatus sc_amplitude_damping_b(const struct ScState *state,
                                     double gamma,
                                     struct ScState **out);

/**
 * Maximal steered coherence with default optimizer settings and the given seed.
 *
 * # Safety
 * `state` must be a live handle; `out` writable.
 */
enum ScStatus sc_msc(const struct ScState *state, uint64_t seed, struct ScMscResult *out);

/**
 * Quantum steering ellipsoid of a two-qubit state.
 *
 * # Safety
 * `state` must be a live handle; `out` writable.
 */
enum ScStatus sc_qse(const struct ScState *state, struct ScEllipsoid *out);

/**
 * Message of the last failed call on this thread, or null if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *sc_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STEERCOH_H */
