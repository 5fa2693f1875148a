#ifndef SOLEKNOT_H
#define SOLEKNOT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SoleknotStatus {
  SOLEKNOT_STATUS_OK = 0,
  SOLEKNOT_STATUS_NULL_ARGUMENT = 1,
  SOLEKNOT_STATUS_INVALID_UTF8 = 2,
  SOLEKNOT_STATUS_PARSE_ERROR = 3,
  /**
   * Inputs are well formed but outside the operation's domain.
   */
  SOLEKNOT_STATUS_DOMAIN_ERROR = 4,
  SOLEKNOT_STATUS_NOT_A_KNOT = 5,
  /**
   * A word length or enumeration budget was exceeded.
   */
  SOLEKNOT_STATUS_LIMIT_EXCEEDED = 6,
  SOLEKNOT_STATUS_INTERNAL = 7,
} SoleknotStatus;

/**
 * Braid word with its strand count.
 */
typedef struct SoleknotBraid SoleknotBraid;

/**
 * Group presentation, optionally with a meridian and longitude.
 */
typedef struct SoleknotPresentation SoleknotPresentation;

typedef struct SoleknotClosureInfo {
  size_t components;
  size_t winding;
  int64_t exponent_sum;
  bool is_knot;
} SoleknotClosureInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *soleknot_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned through a `char **` out-parameter
 * of this library, not yet freed.
 */
void soleknot_string_free(char *s);

/**
 * Parses `n: s1 S2 ..`.
 *
 * # Safety
 * `input` must be a NUL-terminated string and `out` writable.
 */
enum SoleknotStatus soleknot_braid_parse(const char *input, struct SoleknotBraid **out);

/**
 * # Safety
 * `b` must be null or a braid handle not yet freed.
 */
void soleknot_braid_free(struct SoleknotBraid *b);

/**
 * # Safety
 * `b` must be a live braid handle and `out` writable.
 */
enum SoleknotStatus soleknot_braid_to_string(const struct SoleknotBraid *b, char **out);

/**
 * # Safety
 * `b` must be a live braid handle and `out` writable.
 */
enum SoleknotStatus soleknot_braid_closure_info(const struct SoleknotBraid *b,
                                                struct SoleknotClosureInfo *out);

/**
 * Applies the Artin action of `b^power` to `word` (`x1 X2 ..`); the image
 * is written to `out`. Words longer than `max_word_len` are refused.
 *
 * # Safety
 * `b` must be a live braid handle, `word` a NUL-terminated string and
 * `out` writable.
 */
enum SoleknotStatus soleknot_braid_act(const struct SoleknotBraid *b,
                                       const char *word,
                                       int64_t power,
                                       size_t max_word_len,
                                       char **out);

/**
 * Parses the line format (`gens: ..`, `rel: ..`, `meridian: ..`,
 * `longitude: ..`; lines may also be separated by `;`).
 *
 * # Safety
 * `input` must be a NUL-terminated string and `out` writable.
 */
enum SoleknotStatus soleknot_presentation_parse(const char *input,
                                                struct SoleknotPresentation **out);

/**
 * Complement of the closure of `b` in the 3-sphere, with its peripheral
 * pair.
 *
 * # Safety
 * `b` must be a live braid handle and `out` writable.
 */
enum SoleknotStatus soleknot_presentation_sphere_closure(const struct SoleknotBraid *b,
                                                         struct SoleknotPresentation **out);

/**
 * Satellite of `companion` with pattern `b`.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum SoleknotStatus soleknot_presentation_satellite(const struct SoleknotPresentation *companion,
                                                    const struct SoleknotBraid *b,
                                                    struct SoleknotPresentation **out);

/**
 * # Safety
 * `p` must be null or a presentation handle not yet freed.
 */
void soleknot_presentation_free(struct SoleknotPresentation *p);

/**
 * # Safety
 * `p` must be a live presentation handle and `out` writable.
 */
enum SoleknotStatus soleknot_presentation_to_string(const struct SoleknotPresentation *p,
                                                    char **out);

/**
 * First homology, e.g. `Z` or `Z/2 + Z`.
 *
 * # Safety
 * `p` must be a live presentation handle and `out` writable.
 */
enum SoleknotStatus soleknot_presentation_abelianize(const struct SoleknotPresentation *p,
                                                     char **out);

/**
 * Normalized Alexander polynomial, e.g. `t^2 - t + 1`.
 *
 * # Safety
 * `p` must be a live presentation handle and `out` writable.
 */
enum SoleknotStatus soleknot_presentation_alexander(const struct SoleknotPresentation *p,
                                                    char **out);

/**
 * Whether the solenoids of two winding sequences (`pre: .. | per: ..`)
 * are homeomorphic.
 *
 * # Safety
 * `a` and `b` must be NUL-terminated strings and `out` writable.
 */
enum SoleknotStatus soleknot_solenoids_equivalent(const char *a, const char *b, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOLEKNOT_H */
