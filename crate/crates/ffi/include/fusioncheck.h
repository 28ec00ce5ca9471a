#ifndef FUSIONCHECK_H
#define FUSIONCHECK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  FC_STATUS_OK = 0,
  FC_STATUS_NULL_POINTER = 1,
  FC_STATUS_INVALID_UTF8 = 2,
  FC_STATUS_INVALID_PERMUTATION = 3,
  FC_STATUS_ELEMENT_CAP_EXCEEDED = 4,
  FC_STATUS_ENUMERATION_BOUND_EXCEEDED = 5,
  FC_STATUS_NOT_PRIME = 6,
  FC_STATUS_UNKNOWN_SOURCE = 7,
  FC_STATUS_MALFORMED_INPUT = 8,
  FC_STATUS_PRECONDITION_FAILED = 9,
  FC_STATUS_IO = 10,
  FC_STATUS_INTERNAL = 11,
  FC_STATUS_PANIC = 12,
} FcStatus;

/**
 * The fusion system of a group on one of its Sylow subgroups.
 */
typedef struct FcFusion FcFusion;

/**
 * A finite permutation group.
 */
typedef struct FcGroup FcGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread; empty if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *fc_last_error(void);

/**
 * Static name of a status code.
 */
const char *fc_status_name(FcStatus status);

/**
 * Builds a group from `fixture:<name>` or `builder:<expr>`.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out_group` a valid pointer.
 */
FcStatus fc_group_from_source(const char *source, FcGroup **out_group);

/**
 * Builds the group generated by `n_gens` permutations of `{1..degree}`,
 * given as `n_gens * degree` consecutive 1-based images.
 *
 * # Safety
 * `images` must point to `n_gens * degree` readable values.
 */
FcStatus fc_group_from_generators(size_t degree,
                                  const uint32_t *images,
                                  size_t n_gens,
                                  FcGroup **out_group);

/**
 * # Safety
 * `group` must come from this library and not be freed twice.
 */
void fc_group_free(FcGroup *group);

/**
 * # Safety
 * Pointers must be valid.
 */
FcStatus fc_group_order(const FcGroup *group, size_t *order);

/**
 * # Safety
 * Pointers must be valid.
 */
FcStatus fc_group_degree(const FcGroup *group, size_t *degree);

/**
 * # Safety
 * Pointers must be valid.
 */
FcStatus fc_is_p_nilpotent(const FcGroup *group, uint64_t p, bool *result);

/**
 * # Safety
 * Pointers must be valid.
 */
FcStatus fc_is_p_supersolvable(const FcGroup *group, uint64_t p, bool *result);

/**
 * Fusion system of `group` on a Sylow `p`-subgroup.
 *
 * # Safety
 * Pointers must be valid.
 */
FcStatus fc_fusion_new(const FcGroup *group, uint64_t p, FcFusion **out_fusion);

/**
 * # Safety
 * `fusion` must come from this library and not be freed twice.
 */
void fc_fusion_free(FcFusion *fusion);

/**
 * # Safety
 * Pointers must be valid.
 */
FcStatus fc_fusion_sylow_order(const FcFusion *fusion, size_t *order);

/**
 * # Safety
 * Pointers must be valid.
 */
FcStatus fc_fusion_is_supersolvable(const FcFusion *fusion, bool *result);

/**
 * # Safety
 * Pointers must be valid.
 */
FcStatus fc_fusion_is_nilpotent(const FcFusion *fusion, bool *result);

/**
 * Order of the largest subgroup of `S` normal in the fusion system.
 *
 * # Safety
 * Pointers must be valid.
 */
FcStatus fc_fusion_o_p_order(const FcFusion *fusion, size_t *order);

/**
 * Full fusion report as JSON.
 *
 * # Safety
 * Pointers must be valid; free the result with `fc_string_free`.
 */
FcStatus fc_fusion_report_json(const FcFusion *fusion, char **json);

/**
 * Runs one check (`"A"`, `"B"`, `"C"`, `"D"`, `"pnil-wp"`, `"pnil-pn"`,
 * `"Q1"`, `"Q2"` or `"equiv"`) and returns the report as JSON.
 *
 * # Safety
 * Pointers must be valid; free the result with `fc_string_free`.
 */
FcStatus fc_check_json(const FcGroup *group, const char *theorem, uint64_t p, char **json);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void fc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUSIONCHECK_H */
