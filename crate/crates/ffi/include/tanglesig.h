#ifndef TANGLESIG_H
#define TANGLESIG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  TS_STATUS_OK = 0,
  /**
   * Malformed colouring, word, document or dimensions.
   */
  TS_STATUS_INVALID_INPUT = 1,
  /**
   * Some `omega_j` is 1, off the unit circle, or of the wrong arity.
   */
  TS_STATUS_FORBIDDEN_OMEGA = 2,
  /**
   * A numerical check failed (non-Hermitian, ill-conditioned, ...).
   */
  TS_STATUS_NUMERICAL = 3,
  TS_STATUS_NULL_POINTER = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  TS_STATUS_PANIC = 5,
} TsStatus;

/**
 * Opaque coloured braid.
 */
typedef struct TsBraid TsBraid;

/**
 * Opaque dense complex matrix.
 */
typedef struct TsMatrix TsMatrix;

/**
 * Result of [`ts_defect`]. `has_lhs` and `has_meyer` flag which optional
 * fields are meaningful.
 */
typedef struct {
  int64_t lhs;
  int64_t rhs;
  int64_t meyer_rhs;
  bool has_lhs;
  bool has_meyer;
  bool admissible;
} TsDefect;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *ts_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ts_version(void);

/**
 * Builds a braid on `n` strands coloured by `colours[0..n]` in `±1..±mu`,
 * with word `word[0..len]` of signed 1-based generators.
 *
 * # Safety
 * Array arguments must be valid for their lengths; `out` must be writable.
 */
TsStatus ts_braid_new(uint32_t mu,
                      const int32_t *colours,
                      size_t n,
                      const int32_t *word,
                      size_t len,
                      TsBraid **out);

/**
 * Parses a braid document `{"mu": .., "colours": [..], "word": [..]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
TsStatus ts_braid_from_json(const char *json, TsBraid **out);

/**
 * # Safety
 * `b` must be null or a handle from this library, not yet freed.
 */
void ts_braid_free(TsBraid *b);

/**
 * Number of strands, or 0 for a null handle.
 *
 * # Safety
 * `b` must be null or a live handle.
 */
size_t ts_braid_strands(const TsBraid *b);

/**
 * Reduced Burau/Gassner matrix of `b` at the torus point `turns[0..mu]`.
 *
 * # Safety
 * `b` must be a live handle, `turns` valid for `mu` reads, `out` writable.
 */
TsStatus ts_reduced_rep(const TsBraid *b,
                        const double *turns,
                        size_t mu,
                        double tol,
                        TsMatrix **out);

/**
 * # Safety
 * `m` must be null or a live handle.
 */
size_t ts_matrix_rows(const TsMatrix *m);

/**
 * # Safety
 * `m` must be null or a live handle.
 */
size_t ts_matrix_cols(const TsMatrix *m);

/**
 * Entry `(row, col)`, 0-based.
 *
 * # Safety
 * `m` must be a live handle; `re` and `im` writable.
 */
TsStatus ts_matrix_get(const TsMatrix *m, size_t row, size_t col, double *re, double *im);

/**
 * # Safety
 * `m` must be null or a handle from this library, not yet freed.
 */
void ts_matrix_free(TsMatrix *m);

/**
 * Meyer cocycle of the representation matrices of two braids in the
 * same coloured braid group.
 *
 * # Safety
 * Handles must be live, `turns` valid for `mu` reads, `out` writable.
 */
TsStatus ts_meyer(const TsBraid *b1,
                  const TsBraid *b2,
                  const double *turns,
                  size_t mu,
                  double tol,
                  int64_t *out);

/**
 * Levine-Tristram signature and nullity of a Seifert matrix given row-major
 * as `n * n` doubles.
 *
 * # Safety
 * `a` must be valid for `n * n` reads; `sig` and `nullity` writable.
 */
TsStatus ts_lt_signature(const double *a,
                         size_t n,
                         double turns,
                         double tol,
                         int64_t *sig,
                         size_t *nullity);

/**
 * Additivity defect for two braids; the closure side is filled in for
 * one-colour braids only.
 *
 * # Safety
 * Handles must be live, `turns` valid for `mu` reads, `out` writable.
 */
TsStatus ts_defect(const TsBraid *b1,
                   const TsBraid *b2,
                   const double *turns,
                   size_t mu,
                   double tol,
                   TsDefect *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TANGLESIG_H */
