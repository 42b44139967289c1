#ifndef HECKEPS_H
#define HECKEPS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HeckepsStatus {
  HECKEPS_STATUS_OK = 0,
  HECKEPS_STATUS_NULL_POINTER = 1,
  HECKEPS_STATUS_INVALID_PARAMETER = 2,
  HECKEPS_STATUS_OUT_OF_RANGE = 3,
  HECKEPS_STATUS_TABLE_UNDERFLOW = 4,
  HECKEPS_STATUS_OVERFLOW = 5,
  HECKEPS_STATUS_NUMERIC = 6,
  HECKEPS_STATUS_BUFFER_TOO_SMALL = 7,
  HECKEPS_STATUS_IO = 8,
  HECKEPS_STATUS_PANIC = 9,
} HeckepsStatus;

/**
 * Admissible growth function `g`.
 */
typedef struct HeckepsG HeckepsG;

/**
 * Exact τ table with its normalized eigenvalues.
 */
typedef struct HeckepsTauTable HeckepsTauTable;

/**
 * Vaaler approximation `ψ*` and majorant `δ` of order `J`.
 */
typedef struct HeckepsVaaler HeckepsVaaler;

typedef struct HeckepsRunRecord {
  uint64_t n;
  uint64_t hits;
  double a;
  double majorant;
  double quotient;
  double envelope;
} HeckepsRunRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *heckeps_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *heckeps_version(void);

/**
 * Builds τ(1..=limit).
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum HeckepsStatus heckeps_tau_table_new(uint64_t limit, struct HeckepsTauTable **out);

/**
 * # Safety
 * `table` must be null or a handle from [`heckeps_tau_table_new`] not yet freed.
 */
void heckeps_tau_table_free(struct HeckepsTauTable *table);

/**
 * # Safety
 * `table` must be a live handle; `out` valid for a write.
 */
enum HeckepsStatus heckeps_tau_table_limit(const struct HeckepsTauTable *table, uint64_t *out);

/**
 * τ(n) when it fits in 64 bits; [`HeckepsStatus::Overflow`] otherwise.
 *
 * # Safety
 * `table` must be a live handle; `out` valid for a write.
 */
enum HeckepsStatus heckeps_tau_table_tau_i64(const struct HeckepsTauTable *table,
                                             uint64_t n,
                                             int64_t *out);

/**
 * τ(n) as a NUL-terminated decimal string. `written` receives the length
 * without the NUL; when `capacity` is too small it receives the required
 * length and [`HeckepsStatus::BufferTooSmall`] is returned.
 *
 * # Safety
 * `table` must be a live handle, `buffer` valid for `capacity` bytes and
 * `written` valid for a write.
 */
enum HeckepsStatus heckeps_tau_table_tau_string(const struct HeckepsTauTable *table,
                                                uint64_t n,
                                                char *buffer,
                                                size_t capacity,
                                                size_t *written);

/**
 * λ(n) = τ(n) / n^{11/2}.
 *
 * # Safety
 * `table` must be a live handle; `out` valid for a write.
 */
enum HeckepsStatus heckeps_tau_table_lambda(const struct HeckepsTauTable *table,
                                            uint64_t n,
                                            double *out);

/**
 * Parses `identity`, `power:<c>` or `xexp-sqrtlog`.
 *
 * # Safety
 * `selector` must be a NUL-terminated string; `out` valid for a pointer write.
 */
enum HeckepsStatus heckeps_g_parse(const char *selector, struct HeckepsG **out);

/**
 * # Safety
 * `g` must be null or a handle from [`heckeps_g_parse`] not yet freed.
 */
void heckeps_g_free(struct HeckepsG *g);

/**
 * `g(x)` in double precision.
 *
 * # Safety
 * `g` must be a live handle; `out` valid for a write.
 */
enum HeckepsStatus heckeps_g_eval(const struct HeckepsG *g, double x, double *out);

/**
 * Certified `[g(n)]`.
 *
 * # Safety
 * `g` must be a live handle; `out` valid for a write.
 */
enum HeckepsStatus heckeps_g_floor(const struct HeckepsG *g, uint64_t n, uint64_t *out);

/**
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum HeckepsStatus heckeps_vaaler_new(size_t j, struct HeckepsVaaler **out);

/**
 * # Safety
 * `v` must be null or a handle from [`heckeps_vaaler_new`] not yet freed.
 */
void heckeps_vaaler_free(struct HeckepsVaaler *v);

/**
 * `ψ*(x)` and `δ(x)`.
 *
 * # Safety
 * `v` must be a live handle; `psi_star` and `delta` valid for writes.
 */
enum HeckepsStatus heckeps_vaaler_eval(const struct HeckepsVaaler *v,
                                       double x,
                                       double *psi_star,
                                       double *delta);

/**
 * `A(N) = Σ λ([g(n)])` over `n <= N` with `[g(n)]` prime, with the
 * majorant, quotient and envelope `N exp(-C sqrt(log N))`.
 *
 * # Safety
 * `g` and `table` must be live handles; `out` valid for a write.
 */
enum HeckepsStatus heckeps_main_sum(const struct HeckepsG *g,
                                    const struct HeckepsTauTable *table,
                                    uint64_t n,
                                    double c,
                                    struct HeckepsRunRecord *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HECKEPS_H */
