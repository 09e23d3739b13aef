#ifndef SORTSTAT_H
#define SORTSTAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SortstatStatus {
  SORTSTAT_STATUS_OK = 0,
  SORTSTAT_STATUS_NULL_POINTER = 1,
  SORTSTAT_STATUS_INVALID_UTF8 = 2,
  SORTSTAT_STATUS_PARSE = 3,
  SORTSTAT_STATUS_INVALID_OBJECT = 4,
  SORTSTAT_STATUS_NOT_IN_CLASS = 5,
  SORTSTAT_STATUS_TYPE_MISMATCH = 6,
  SORTSTAT_STATUS_UNKNOWN_CHECK = 7,
  SORTSTAT_STATUS_PANIC = 8,
} SortstatStatus;

typedef enum SortstatFamily {
  SORTSTAT_FAMILY_PERM = 0,
  SORTSTAT_FAMILY_SPERM = 1,
  SORTSTAT_FAMILY_DPERM = 2,
  SORTSTAT_FAMILY_DYCK = 3,
  SORTSTAT_FAMILY_MATCHING = 4,
  SORTSTAT_FAMILY_BIMATCHING = 5,
} SortstatFamily;

typedef struct SortstatMatching SortstatMatching;

typedef struct SortstatPermutation SortstatPermutation;

typedef struct SortstatReport SortstatReport;

typedef struct SortstatSignedPermutation SortstatSignedPermutation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next `sortstat_*` call on the thread.
const char *sortstat_last_error(void);

// # Safety
// `s` must come from this library or be null.
void sortstat_string_free(char *s);

// Parses `"6571342"` or `"6,5,7,1,3,4,2"`.
//
// # Safety
// `text` must be a nul-terminated string and `out` writable.
enum SortstatStatus sortstat_perm_parse(const char *text, struct SortstatPermutation **out);

// # Safety
// `p` must come from `sortstat_perm_parse` or be null.
void sortstat_perm_free(struct SortstatPermutation *p);

// # Safety
// `p` must be a live handle or null.
size_t sortstat_perm_len(const struct SortstatPermutation *p);

// Inversions.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum SortstatStatus sortstat_perm_inv(const struct SortstatPermutation *p, size_t *out);

// Major index.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum SortstatStatus sortstat_perm_maj(const struct SortstatPermutation *p, size_t *out);

// Sorting index (Straight Selection Sort displacement).
//
// # Safety
// `p` must be a live handle and `out` writable.
enum SortstatStatus sortstat_perm_sor(const struct SortstatPermutation *p, size_t *out);

// Number of cycles.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum SortstatStatus sortstat_perm_cyc(const struct SortstatPermutation *p, size_t *out);

// Restricted sorting index of `sigma` toward `sigma0` on the class given by
// `r[0..r_len]`.
//
// # Safety
// Handles must be live, `r` must point to `r_len` values and `out` be writable.
enum SortstatStatus sortstat_perm_sor_r(const struct SortstatPermutation *sigma,
                                        const struct SortstatPermutation *sigma0,
                                        const size_t *r,
                                        size_t r_len,
                                        size_t *out);

// Parses `"-5,1,3,-4,-2"`.
//
// # Safety
// `text` must be a nul-terminated string and `out` writable.
enum SortstatStatus sortstat_sperm_parse(const char *text, struct SortstatSignedPermutation **out);

// # Safety
// `p` must come from `sortstat_sperm_parse` or be null.
void sortstat_sperm_free(struct SortstatSignedPermutation *p);

// # Safety
// `p` must be a live handle and `out` writable.
enum SortstatStatus sortstat_sperm_inv_b(const struct SortstatSignedPermutation *p, size_t *out);

// # Safety
// `p` must be a live handle and `out` writable.
enum SortstatStatus sortstat_sperm_sor_b(const struct SortstatSignedPermutation *p, size_t *out);

// Fails with `InvalidObject` when the number of negative entries is odd.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum SortstatStatus sortstat_sperm_inv_d(const struct SortstatSignedPermutation *p, size_t *out);

// Fails with `InvalidObject` when the number of negative entries is odd.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum SortstatStatus sortstat_sperm_sor_d(const struct SortstatSignedPermutation *p, size_t *out);

// Type-B restricted sorting index; `sigma0` must have a positive window.
//
// # Safety
// Handles must be live, `r` must point to `r_len` values and `out` be writable.
enum SortstatStatus sortstat_sperm_sor_r(const struct SortstatSignedPermutation *sigma,
                                         const struct SortstatSignedPermutation *sigma0,
                                         const size_t *r,
                                         size_t r_len,
                                         size_t *out);

// Parses `"1-4,2-3"`.
//
// # Safety
// `text` must be a nul-terminated string and `out` writable.
enum SortstatStatus sortstat_matching_parse(const char *text, struct SortstatMatching **out);

// # Safety
// `m` must come from `sortstat_matching_parse` or be null.
void sortstat_matching_free(struct SortstatMatching *m);

// Crossings, nestings and alignments.
//
// # Safety
// `m` must be a live handle; the outputs must be writable.
enum SortstatStatus sortstat_matching_relations(const struct SortstatMatching *m,
                                                size_t *cr,
                                                size_t *ne,
                                                size_t *al);

// Sorting index of `m` toward `m0`; both must have the same type.
//
// # Safety
// Handles must be live and `out` writable.
enum SortstatStatus sortstat_matching_sor(const struct SortstatMatching *m,
                                          const struct SortstatMatching *m0,
                                          size_t *out);

// Any statistic accepted by `sortstat stat`, returned as JSON (a number, an
// array of indices, or a string). `base` and `r` may be null.
//
// # Safety
// String arguments must be nul-terminated or null where allowed; `out` writable.
enum SortstatStatus sortstat_stat_json(enum SortstatFamily family,
                                       const char *object,
                                       const char *statistic,
                                       const char *base,
                                       const char *r,
                                       char **out);

// Runs the named checks (all when `count` is 0) up to `max_n` (0 keeps each
// check's default). A failing check is not an error: inspect the report.
//
// # Safety
// `ids` must point to `count` nul-terminated strings; `out` writable.
enum SortstatStatus sortstat_verify(const char *const *ids,
                                    size_t count,
                                    size_t max_n,
                                    struct SortstatReport **out);

// 1 if every check passed, 0 otherwise (including a null report).
//
// # Safety
// `report` must be a live handle or null.
int32_t sortstat_report_passed(const struct SortstatReport *report);

// The report as JSON; release with `sortstat_string_free`. Null if `report` is null.
//
// # Safety
// `report` must be a live handle or null.
char *sortstat_report_json(const struct SortstatReport *report);

// # Safety
// `report` must come from `sortstat_verify` or be null.
void sortstat_report_free(struct SortstatReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SORTSTAT_H */
