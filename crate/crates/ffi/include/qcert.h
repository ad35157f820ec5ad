#ifndef QCERT_H
#define QCERT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum {
  QCERT_STATUS_OK = 0,
  /**
   * The check ran and found a counterexample, or the sides differ.
   */
  QCERT_STATUS_CHECK_FAILED = 1,
  /**
   * A sampled or given point sits on a pole.
   */
  QCERT_STATUS_POLE = 2,
  QCERT_STATUS_INVALID_ARGUMENT = 3,
  QCERT_STATUS_UNKNOWN_ID = 4,
  QCERT_STATUS_COST_GUARD = 5,
  QCERT_STATUS_PARSE = 6,
  QCERT_STATUS_NULL_POINTER = 7,
  /**
   * A panic was caught at the boundary.
   */
  QCERT_STATUS_INTERNAL = 8,
} QcertStatus;

/**
 * A parameter point: rational symbols and integer indices.
 */
typedef struct QcertPoint QcertPoint;

/**
 * The report of one verify, certify or series run.
 */
typedef struct QcertReport QcertReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string. Do not free.
 */
const char *qcert_version(void);

/**
 * Copy of the last error message on this thread, or null if none.
 * Free with [`qcert_string_free`].
 */
char *qcert_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void qcert_string_free(char *s);

/**
 * A new empty point. Free with [`qcert_point_free`].
 */
QcertPoint *qcert_point_new(void);

/**
 * Parses `name=value,...` into a new point stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
QcertStatus qcert_point_parse(const char *text, QcertPoint **out);

/**
 * Sets a rational symbol from text such as `-3/7`.
 *
 * # Safety
 * `point` must be a live handle; `name` and `value` NUL-terminated strings.
 */
QcertStatus qcert_point_set_symbol(QcertPoint *point, const char *name, const char *value);

/**
 * Sets an integer index.
 *
 * # Safety
 * `point` must be a live handle; `name` a NUL-terminated string.
 */
QcertStatus qcert_point_set_index(QcertPoint *point, const char *name, int64_t value);

/**
 * The point as `name=value,...`. Free with [`qcert_string_free`].
 *
 * # Safety
 * `point` must be a live handle or null.
 */
char *qcert_point_to_string(const QcertPoint *point);

/**
 * # Safety
 * `point` must come from this library and not have been freed. Null is ignored.
 */
void qcert_point_free(QcertPoint *point);

/**
 * Evaluates both sides of identity `id` at `point`. On success `*lhs` and
 * `*rhs` hold exact fractions; the status is `CheckFailed` when they differ.
 *
 * # Safety
 * `id` must be NUL-terminated, `point` a live handle, `lhs`/`rhs` writable.
 */
QcertStatus qcert_eval_sides(const char *id, const QcertPoint *point, char **lhs, char **rhs);

/**
 * As [`qcert_eval_sides`] with the point given as `name=value,...`.
 *
 * # Safety
 * `id` and `point` must be NUL-terminated; `lhs`/`rhs` writable.
 */
QcertStatus qcert_eval_sides_str(const char *id, const char *point, char **lhs, char **rhs);

/**
 * Verifies identity `id`. `trials = 0` uses the default. The report is
 * stored in `*out` whenever the run completes, including on `CheckFailed`.
 *
 * # Safety
 * `id` must be NUL-terminated; `out` writable.
 */
QcertStatus qcert_verify(const char *id, uint64_t trials, uint64_t seed, QcertReport **out);

/**
 * Replays proof certificate `id` with levels up to `n_max` (0 for the default).
 *
 * # Safety
 * `id` must be NUL-terminated; `out` writable.
 */
QcertStatus qcert_certify(const char *id,
                          uint64_t trials,
                          uint64_t seed,
                          int64_t n_max,
                          QcertReport **out);

/**
 * Checks series identity `id` to order `order` (0 for the default).
 *
 * # Safety
 * `id` must be NUL-terminated; `out` writable.
 */
QcertStatus qcert_series(const char *id,
                         uint32_t order,
                         uint64_t trials,
                         uint64_t seed,
                         QcertReport **out);

/**
 * 1 if every item in the report passed, 0 otherwise (or for null).
 *
 * # Safety
 * `report` must be a live handle or null.
 */
int qcert_report_passed(const QcertReport *report);

/**
 * The report as JSON. Free with [`qcert_string_free`].
 *
 * # Safety
 * `report` must be a live handle or null.
 */
char *qcert_report_json(const QcertReport *report);

/**
 * # Safety
 * `report` must come from this library and not have been freed. Null is ignored.
 */
void qcert_report_free(QcertReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCERT_H */
