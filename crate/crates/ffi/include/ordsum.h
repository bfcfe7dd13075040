#ifndef ORDSUM_H
#define ORDSUM_H

/* Generated from the Rust sources by cbindgen; edit those instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Exact comparison of 1617·ψ(G) against 211·ψ(C_n).
 */
typedef enum OrdsumComparison {
  ORDSUM_COMPARISON_LESS = -1,
  ORDSUM_COMPARISON_EQUAL = 0,
  ORDSUM_COMPARISON_GREATER = 1,
} OrdsumComparison;

/**
 * Call outcome. Values other than `Ok` leave the out parameters
 * untouched.
 */
typedef enum OrdsumStatus {
  ORDSUM_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  ORDSUM_STATUS_NULL_ARGUMENT = 1,
  /**
   * The spec string was not valid UTF-8.
   */
  ORDSUM_STATUS_INVALID_UTF8 = 2,
  /**
   * The spec string did not parse or had invalid parameters.
   */
  ORDSUM_STATUS_PARSE_ERROR = 3,
  /**
   * The group order exceeds the enumeration cap.
   */
  ORDSUM_STATUS_CAP_EXCEEDED = 4,
  /**
   * Any other construction or computation failure.
   */
  ORDSUM_STATUS_FAILED = 5,
} OrdsumStatus;

/**
 * Opaque handle to an enumerated finite group.
 */
typedef struct OrdsumGroup OrdsumGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a group from a spec string such as `"prod(a 5, c 7)"`.
 * `cap` bounds the order; pass 0 for the default (20000).
 *
 * # Safety
 * `spec` must point to a NUL-terminated string and `out` to a valid
 * pointer slot. On `Ok` the slot owns a group to be released with
 * `ordsum_group_free`.
 */
enum OrdsumStatus ordsum_group_from_spec(const char *spec, size_t cap, struct OrdsumGroup **out);

/**
 * Releases a group handle; null is a no-op.
 *
 * # Safety
 * `group` must have come from `ordsum_group_from_spec` and not have
 * been freed already.
 */
void ordsum_group_free(struct OrdsumGroup *group);

/**
 * Writes the group order.
 *
 * # Safety
 * `group` and `out` must be valid pointers.
 */
enum OrdsumStatus ordsum_group_order(const struct OrdsumGroup *group, uint64_t *out);

/**
 * Writes ψ(G) as a heap-allocated decimal string.
 *
 * # Safety
 * `group` and `out` must be valid pointers; release the string with
 * `ordsum_string_free`.
 */
enum OrdsumStatus ordsum_group_psi(const struct OrdsumGroup *group, char **out);

/**
 * Writes whether the derived series reaches the trivial group.
 *
 * # Safety
 * `group` and `out` must be valid pointers.
 */
enum OrdsumStatus ordsum_group_is_solvable(const struct OrdsumGroup *group, bool *out);

/**
 * Evaluates the criterion: the exact comparison of 1617·ψ(G) with
 * 211·ψ(C_n), and whether it concludes solvability (strict excess).
 *
 * # Safety
 * All pointers must be valid.
 */
enum OrdsumStatus ordsum_group_criterion(const struct OrdsumGroup *group,
                                         enum OrdsumComparison *out_comparison,
                                         bool *out_solvable_by_criterion);

/**
 * Writes ψ(C_n) via the multiplicative formula as a decimal string;
 * no enumeration, n up to 10¹².
 *
 * # Safety
 * `out` must be a valid pointer; release the string with
 * `ordsum_string_free`.
 */
enum OrdsumStatus ordsum_psi_cyclic(uint64_t n, char **out);

/**
 * Releases a string produced by this library; null is a no-op.
 *
 * # Safety
 * `s` must have come from this library and not have been freed
 * already.
 */
void ordsum_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORDSUM_H */
