#ifndef HEIGHTLAB_H
#define HEIGHTLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum HlStatus {
  HL_STATUS_OK = 0,
  HL_STATUS_NULL_ARGUMENT = 1,
  HL_STATUS_INVALID_UTF8 = 2,
  HL_STATUS_INPUT = 3,
  HL_STATUS_PARSE = 4,
  HL_STATUS_DOMAIN = 5,
  HL_STATUS_PRECISION = 6,
  HL_STATUS_PRECONDITION = 7,
  HL_STATUS_SEARCH_EXHAUSTED = 8,
  HL_STATUS_PANIC = 9,
} HlStatus;

typedef enum HlReduction {
  HL_REDUCTION_GOOD = 0,
  HL_REDUCTION_MULT_SPLIT = 1,
  HL_REDUCTION_MULT_NONSPLIT = 2,
  HL_REDUCTION_ADDITIVE = 3,
} HlReduction;

/**
 * Opaque curve handle.
 */
typedef struct HlCurve HlCurve;

/**
 * Opaque point handle. Points carry no reference to their curve.
 */
typedef struct HlPoint HlPoint;

typedef struct HlReductionInfo {
  enum HlReduction kind;
  uint32_t ord_min_disc;
  uint32_t conductor_exponent;
  uint32_t tamagawa;
  /**
   * `ord_p(1/j)` for multiplicative reduction, 0 otherwise.
   */
  uint32_t component_index_n;
} HlReductionInfo;

/**
 * An interval `value ± error`.
 */
typedef struct HlReal {
  double value;
  double error;
} HlReal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *hl_version(void);

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next library call on the same thread.
 */
const char *hl_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void hl_string_free(char *s);

/**
 * Parses `"A,B"` (short form) or `"a1,a2,a3,a4,a6"`; entries may be rationals.
 *
 * # Safety
 * `coeffs` must be a NUL-terminated string and `out` writable.
 */
enum HlStatus hl_curve_parse(const char *coeffs, struct HlCurve **out);

/**
 * # Safety
 * `c` must be null or a handle from `hl_curve_parse`, not yet freed.
 */
void hl_curve_free(struct HlCurve *c);

/**
 * j-invariant as `"n/d"`; free with `hl_string_free`.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum HlStatus hl_curve_j_invariant(const struct HlCurve *c, char **out);

/**
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum HlStatus hl_curve_reduction(const struct HlCurve *c, uint64_t p, struct HlReductionInfo *out);

/**
 * Parses `"x,y"` and checks the point lies on `c`.
 *
 * # Safety
 * `c` must be a live handle, `xy` NUL-terminated and `out` writable.
 */
enum HlStatus hl_point_parse(const struct HlCurve *c, const char *xy, struct HlPoint **out);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void hl_point_free(struct HlPoint *p);

/**
 * `[m]P` as a new handle.
 *
 * # Safety
 * `c` and `p` must be live handles with `p` on `c`; `out` writable.
 */
enum HlStatus hl_point_mul(const struct HlCurve *c,
                           const struct HlPoint *p,
                           int64_t m,
                           struct HlPoint **out);

/**
 * Writes `"x,y"`, or `"O"` for the point at infinity.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum HlStatus hl_point_to_string(const struct HlPoint *p, char **out);

/**
 * Néron–Tate height of a rational point, to within `eps`.
 *
 * # Safety
 * `c` and `p` must be live handles and `out` writable.
 */
enum HlStatus hl_canonical_height(const struct HlCurve *c,
                                  const struct HlPoint *p,
                                  double eps,
                                  struct HlReal *out);

/**
 * Canonical height of `x` for the Lattès map of the curve's integral short model.
 * `x` is a rational in the coordinates of `c`.
 *
 * # Safety
 * `c` must be a live handle, `x` NUL-terminated and `out` writable.
 */
enum HlStatus hl_lattes_height(const struct HlCurve *c,
                               const char *x,
                               double eps,
                               struct HlReal *out);

/**
 * Height lower bound for `variant` (`"41"`, `"42"`, `"51"`, `"52"`, `"53"`, `"25"`, `"26"`)
 * with inputs taken from the curve at `p` and `d = e = 1`.
 *
 * # Safety
 * `c` must be a live handle, `variant` NUL-terminated and `out` writable.
 */
enum HlStatus hl_bound(const struct HlCurve *c,
                       uint64_t p,
                       const char *variant,
                       struct HlReal *out);

/**
 * Full bound report, including the derivation trace, as JSON.
 *
 * # Safety
 * As for `hl_bound`, with `out` receiving a string to free with `hl_string_free`.
 */
enum HlStatus hl_bound_json(const struct HlCurve *c, uint64_t p, const char *variant, char **out);

/**
 * Small-height preimage tower at an odd prime `p`, levels `0..=levels`, as JSON.
 *
 * # Safety
 * `out` must be writable; free the result with `hl_string_free`.
 */
enum HlStatus hl_counterexample_json(uint64_t p, size_t levels, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HEIGHTLAB_H */
