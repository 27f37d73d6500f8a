#ifndef LN_KIT_H
#define LN_KIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every exported function.
 */
typedef enum LnStatus {
  LN_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  LN_STATUS_NULL_POINTER = 1,
  /**
   * Malformed number, violated precondition or out-of-range index.
   */
  LN_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Solver and oracle (or casework and exact solve) disagree.
   */
  LN_STATUS_MISMATCH = 3,
  /**
   * The factoring budget ran out before a verdict was reached.
   */
  LN_STATUS_INDETERMINATE = 4,
  /**
   * A panic was caught at the boundary.
   */
  LN_STATUS_INTERNAL = 5,
} LnStatus;

/**
 * Family selector for [`ln_family_member`].
 */
typedef enum LnFamily {
  LN_FAMILY_N1 = 1,
  LN_FAMILY_N2 = 2,
  LN_FAMILY_N7 = 7,
} LnFamily;

/**
 * Opaque list of solutions, sorted by `(n, y)`.
 */
typedef struct LnSolutionSet LnSolutionSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *ln_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ln_string_free(char *s);

/**
 * Runs the decision procedure for `k`, `2 <= n <= n_max`. If `x_max` is
 * non-null the result is cross-checked with the brute-force oracle below
 * that bound; a disagreement returns `Mismatch`.
 *
 * # Safety
 * `x_max` is null or a NUL-terminated string; `out` is writable.
 */
enum LnStatus ln_solve(uint32_t k, uint32_t n_max, const char *x_max, struct LnSolutionSet **out);

/**
 * Brute-force search of `x^2 + 19^(2k+1) = 4y^n` over `n_min <= n <= n_max`,
 * `x <= x_max`.
 *
 * # Safety
 * `x_max` is a NUL-terminated string; `out` is writable.
 */
enum LnStatus ln_brute_force(uint32_t k,
                             uint32_t n_min,
                             uint32_t n_max,
                             const char *x_max,
                             struct LnSolutionSet **out);

/**
 * Writes whether the oracle and the classification agree inside the window.
 *
 * # Safety
 * `x_max` is a NUL-terminated string; `complete` is writable.
 */
enum LnStatus ln_verify(uint32_t k,
                        uint32_t n_min,
                        uint32_t n_max,
                        const char *x_max,
                        bool *complete);

/**
 * One family member as a one-element set. `param` is `t` for `N1`/`N2`
 * and `m` for `N7`.
 *
 * # Safety
 * `out` is writable.
 */
enum LnStatus ln_family_member(uint32_t k,
                               enum LnFamily family,
                               uint32_t param,
                               struct LnSolutionSet **out);

/**
 * Number of solutions in `set`; 0 for null.
 *
 * # Safety
 * `set` is null or a live handle.
 */
size_t ln_solution_set_len(const struct LnSolutionSet *set);

/**
 * Solution `index` of `set`. `x` and `y` receive new strings to be released
 * with [`ln_string_free`].
 *
 * # Safety
 * `set` is a live handle; `x`, `y`, `n` are writable.
 */
enum LnStatus ln_solution_set_get(const struct LnSolutionSet *set,
                                  size_t index,
                                  char **x,
                                  char **y,
                                  uint32_t *n);

/**
 * Releases a solution set. Null is ignored.
 *
 * # Safety
 * `set` must come from this library and not have been freed.
 */
void ln_solution_set_free(struct LnSolutionSet *set);

/**
 * The Lucas number `u_n(P, Q)` as a decimal string (with a leading `-` when
 * negative).
 *
 * # Safety
 * `out` is writable.
 */
enum LnStatus ln_lucas_u(int64_t p, int64_t q, uint64_t n, char **out);

/**
 * Whether `u_n(P, Q)` has a primitive prime divisor. Returns
 * `Indeterminate` when the factoring budget is exhausted first.
 *
 * # Safety
 * `exists` is writable.
 */
enum LnStatus ln_primitive_divisor(int64_t p, int64_t q, uint64_t n, uint64_t budget, bool *exists);

/**
 * Class number of the negative discriminant `disc`.
 *
 * # Safety
 * `h` is writable.
 */
enum LnStatus ln_class_number(int64_t disc, uint64_t *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LN_KIT_H */
