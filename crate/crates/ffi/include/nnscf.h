#ifndef NNSCF_H
#define NNSCF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The nonzero values beyond 4 are specific to the C interface.
 */
typedef enum {
  NNSCF_STATUS_OK = 0,
  NNSCF_STATUS_CHECK_FAILED = 1,
  NNSCF_STATUS_INVALID = 2,
  NNSCF_STATUS_SIZE_GUARD = 3,
  NNSCF_STATUS_INTERNAL = 4,
  NNSCF_STATUS_NULL_POINTER = 5,
  NNSCF_STATUS_UTF8 = 6,
  NNSCF_STATUS_PANIC = 7,
} NnscfStatus;

/**
 * Which supercharacter theory a table describes.
 */
typedef enum {
  NNSCF_THEORY_NONNESTING = 0,
  NNSCF_THEORY_ALGEBRA = 1,
} NnscfTheory;

typedef struct NnscfField NnscfField;

typedef struct NnscfPoset NnscfPoset;

typedef struct NnscfTable NnscfTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Owned by the library.
 */
const char *nnscf_last_error(void);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void nnscf_string_free(char *s);

/**
 * GF(p^e). `modulus` holds e+1 coefficients, constant first; it may be NULL when e = 1.
 *
 * # Safety
 * `modulus` must point to `modulus_len` values when non-null; `out` must be writable.
 */
NnscfStatus nnscf_field_new(uint64_t p,
                            uint32_t e,
                            const uint64_t *modulus,
                            uintptr_t modulus_len,
                            NnscfField **out);

/**
 * # Safety
 * `field` must be NULL or a live handle from `nnscf_field_new`.
 */
void nnscf_field_free(NnscfField *field);

/**
 * Number of elements q, or 0 for NULL.
 *
 * # Safety
 * `field` must be NULL or a live handle.
 */
uint64_t nnscf_field_order(const NnscfField *field);

/**
 * Poset from JSON `{"elements": [...], "covers": [[a, b], ...]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
NnscfStatus nnscf_poset_from_json(const char *json, NnscfPoset **out);

/**
 * # Safety
 * `poset` must be NULL or a live handle.
 */
void nnscf_poset_free(NnscfPoset *poset);

/**
 * Number of elements, or 0 for NULL.
 *
 * # Safety
 * `poset` must be NULL or a live handle.
 */
uintptr_t nnscf_poset_len(const NnscfPoset *poset);

/**
 * Number of nonnesting arc diagrams on the poset over the field.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
NnscfStatus nnscf_count_nonnesting(const NnscfPoset *poset, const NnscfField *field, uint64_t *out);

/**
 * Supercharacter table. `limit` bounds the group order for the algebra theory.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
NnscfStatus nnscf_table_new(const NnscfPoset *poset,
                            const NnscfField *field,
                            NnscfTheory theory,
                            uint64_t limit,
                            NnscfTable **out);

/**
 * # Safety
 * `table` must be NULL or a live handle.
 */
void nnscf_table_free(NnscfTable *table);

/**
 * Number of rows (and columns), or 0 for NULL.
 *
 * # Safety
 * `table` must be NULL or a live handle.
 */
uintptr_t nnscf_table_len(const NnscfTable *table);

/**
 * JSON rendering of the table; free the result with `nnscf_string_free`.
 *
 * # Safety
 * `table` must be live; `out` must be writable.
 */
NnscfStatus nnscf_table_to_json(const NnscfTable *table, char **out);

/**
 * Run the exhaustive supercharacter theory checks on U_P. Returns `CheckFailed`
 * when a check fails; the first failing check is reported by `nnscf_last_error`.
 *
 * # Safety
 * Handles must be live.
 */
NnscfStatus nnscf_verify_sct(const NnscfPoset *poset, const NnscfField *field, uint64_t limit);

/**
 * Run the command line with `argv` (without the program name). The exit code
 * is returned and the output written to `*out`, to be freed with `nnscf_string_free`.
 *
 * # Safety
 * `argv` must hold `argc` nul-terminated strings; `out` must be writable.
 */
int32_t nnscf_run(uintptr_t argc, const char *const *argv, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NNSCF_H */
