#ifndef SUSY_CES_H
#define SUSY_CES_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define SUSY_CES_FAMILY_LINEAR 0

#define SUSY_CES_FAMILY_RADIAL_UNBROKEN 1

#define SUSY_CES_FAMILY_RADIAL_BROKEN 2

#define SUSY_CES_LOWER 0

#define SUSY_CES_RAISE 1

typedef enum SusyCesStatus {
  SUSY_CES_STATUS_OK = 0,
  SUSY_CES_STATUS_NULL_POINTER = 1,
  SUSY_CES_STATUS_INVALID_PARAMETER = 2,
  SUSY_CES_STATUS_INADMISSIBLE = 3,
  SUSY_CES_STATUS_DOMAIN = 4,
  SUSY_CES_STATUS_SINGULAR = 5,
  SUSY_CES_STATUS_NUMERICAL = 6,
  SUSY_CES_STATUS_PANIC = 7,
} SusyCesStatus;

/**
 * Opaque handle to a solved family.
 */
typedef struct SusyCesSystem SusyCesSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a handle for (family, ε, γ, β). Fails with `Inadmissible` when u
 * is not strictly positive for the parameter point.
 *
 * # Safety
 * `out` must be null or valid for a pointer write.
 */
enum SusyCesStatus susy_ces_system_new(int32_t family,
                                       double epsilon,
                                       double gamma,
                                       double beta,
                                       struct SusyCesSystem **out);

/**
 * # Safety
 * `handle` must be null or a pointer returned by [`susy_ces_system_new`]
 * that has not been freed.
 */
void susy_ces_system_free(struct SusyCesSystem *handle);

/**
 * Admissibility of a parameter point and the largest admissible |β|.
 *
 * # Safety
 * Out pointers must be valid for writes.
 */
enum SusyCesStatus susy_ces_check_admissibility(int32_t family,
                                                double epsilon,
                                                double gamma,
                                                double beta,
                                                bool *admissible,
                                                double *beta_bound);

/**
 * W(x) = Φ(x) + u′(x)/u(x).
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for a write.
 */
enum SusyCesStatus susy_ces_superpotential(const struct SusyCesSystem *handle,
                                           double x,
                                           double *out);

/**
 * The shape-invariant partner V₊(x).
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for a write.
 */
enum SusyCesStatus susy_ces_v_plus(const struct SusyCesSystem *handle, double x, double *out);

/**
 * The conditionally exactly solvable partner V₋(x).
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for a write.
 */
enum SusyCesStatus susy_ces_v_minus(const struct SusyCesSystem *handle, double x, double *out);

/**
 * Closed-form n-th eigenvalue of H₋.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for a write.
 */
enum SusyCesStatus susy_ces_e_minus(const struct SusyCesSystem *handle, size_t n, double *out);

/**
 * Normalized n-th eigenfunction of H₋ at x.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for a write.
 */
enum SusyCesStatus susy_ces_psi_minus(const struct SusyCesSystem *handle,
                                      size_t n,
                                      double x,
                                      double *out);

/**
 * Coefficient c in X ψₙ = c ψₙ₋₁ (`SUSY_CES_LOWER`) or X† ψₙ = c ψₙ₊₁
 * (`SUSY_CES_RAISE`). c is 0 when the image leaves the tower.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for a write.
 */
enum SusyCesStatus susy_ces_ladder_coefficient(const struct SusyCesSystem *handle,
                                               size_t n,
                                               int32_t direction,
                                               double *out);

/**
 * Lowest `count` finite-difference eigenvalues of H₋ on the family's
 * default grid, written to `out[0..count]`.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for `count` writes.
 */
enum SusyCesStatus susy_ces_numeric_spectrum(const struct SusyCesSystem *handle,
                                             size_t count,
                                             double *out);

/**
 * Static, NUL-terminated description of a status code.
 */
const char *susy_ces_status_message(enum SusyCesStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUSY_CES_H */
