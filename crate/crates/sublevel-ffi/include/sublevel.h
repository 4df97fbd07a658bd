#ifndef SUBLEVEL_H
#define SUBLEVEL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum SublevelStatus {
  SublevelOk = 0,
  SublevelNullArgument = 1,
  SublevelInvalidArgument = 2,
  SublevelConstructionFailed = 3,
  SublevelSolverFailed = 4,
} SublevelStatus;

/**
 * Verdict of an identity verification.
 */
typedef enum SublevelVerdict {
  SublevelVerdictPass = 0,
  SublevelVerdictFail = 1,
  SublevelVerdictCounterexample = 2,
} SublevelVerdict;

/**
 * Opaque functional pair handle.
 */
typedef struct SublevelPair SublevelPair;

/**
 * Opaque measure space handle.
 */
typedef struct SublevelSpace SublevelSpace;

/**
 * Flat view of a verification report.
 */
typedef struct SublevelReport {
  double lhs;
  double rhs;
  double gap;
  enum SublevelVerdict verdict;
  /**
   * 1 iff r lies in the admissible range.
   */
  int32_t admissible;
  /**
   * 1 iff a level-set multiplier was found (then lambda_r is valid).
   */
  int32_t has_lambda;
  double lambda_r;
  /**
   * 1 iff a uniqueness failure (level jump) was detected; the jump
   * bracket is [jump_lo, jump_hi].
   */
  int32_t has_jump;
  double jump_lo;
  double jump_hi;
} SublevelReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `cap`). Returns the full message length in bytes.
 *
 * # Safety
 * `buf` must point to `cap` writable bytes, or be NULL (then only the
 * required length is returned).
 */
uintptr_t sublevel_last_error_message(char *buf, uintptr_t cap);

/**
 * φ = −y, ψ = y² on the line.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SublevelStatus sublevel_pair_canonical(struct SublevelPair **out);

/**
 * The piecewise counterexample pair with two global minima at λ = 1/8.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SublevelStatus sublevel_pair_two_minima(struct SublevelPair **out);

/**
 * Linear φ = ⟨c, ·⟩ against ψ = e^{‖y‖^q} − 1.
 *
 * # Safety
 * `c` must point to `len` doubles; `out` must be valid.
 */
enum SublevelStatus sublevel_pair_exp_growth(const double *c,
                                             uintptr_t len,
                                             double q,
                                             struct SublevelPair **out);

/**
 * Linear φ = ⟨g, ·⟩ against ψ = ‖y‖²/2, multiplier interval ]l, ∞[.
 *
 * # Safety
 * `g` must point to `len` doubles; `out` must be valid.
 */
enum SublevelStatus sublevel_pair_linear_quadratic(const double *g,
                                                   uintptr_t len,
                                                   double l,
                                                   struct SublevelPair **out);

/**
 * The concave-growth family f = a0·log(1+(y⁺)^p) + Σ aᵢ(y⁺)^{qᵢ}, paired as
 * (−f, |y|^p) with multiplier interval ]δ, ∞[.
 *
 * # Safety
 * `coeffs` and `exponents` must each point to `terms` doubles (or both be
 * NULL with `terms` = 0); `out` must be valid.
 */
enum SublevelStatus sublevel_pair_log_family(double a0,
                                             const double *coeffs,
                                             const double *exponents,
                                             uintptr_t terms,
                                             double p,
                                             double delta,
                                             struct SublevelPair **out);

/**
 * Releases a pair handle. NULL is a no-op.
 *
 * # Safety
 * `pair` must be a handle returned by a constructor, released once.
 */
void sublevel_pair_free(struct SublevelPair *pair);

/**
 * Atoms with μ = 1 and the given γ weights.
 *
 * # Safety
 * `gammas` must point to `len` doubles; `out` must be valid.
 */
enum SublevelStatus sublevel_space_unit_mu(const double *gammas,
                                           uintptr_t len,
                                           struct SublevelSpace **out);

/**
 * Uniform interval discretization with γ ≡ 1.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SublevelStatus sublevel_space_uniform_interval(uintptr_t cells,
                                                    double length,
                                                    struct SublevelSpace **out);

/**
 * Releases a space handle. NULL is a no-op.
 *
 * # Safety
 * `space` must be a handle returned by a constructor, released once.
 */
void sublevel_space_free(struct SublevelSpace *space);

/**
 * Finds the level-set multiplier λ_r and the level-set infimum of φ.
 *
 * # Safety
 * `pair` must be a live handle; `lambda_out`/`level_infimum_out` may be NULL.
 */
enum SublevelStatus sublevel_find_lambda_r(const struct SublevelPair *pair,
                                           double r,
                                           double tol,
                                           uint64_t seed,
                                           double *lambda_out,
                                           double *level_infimum_out);

/**
 * Verifies the sub-level identity on a discrete space and fills `report`.
 * A failed identity is still SUBLEVEL_OK with verdict fail/counterexample;
 * only pipeline errors return a non-OK status.
 *
 * # Safety
 * `space` and `pair` must be live handles; `report` must be valid.
 */
enum SublevelStatus sublevel_verify_identity(const struct SublevelSpace *space,
                                             const struct SublevelPair *pair,
                                             double r,
                                             uint64_t seed,
                                             struct SublevelReport *report);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sublevel_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBLEVEL_H */
