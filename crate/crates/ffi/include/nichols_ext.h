#ifndef NICHOLS_EXT_H
#define NICHOLS_EXT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum NxStatus {
  NX_STATUS_OK = 0,
  NX_STATUS_NULL_POINTER = 1,
  NX_STATUS_INVALID_UTF8 = 2,
  /**
   * Bad `N`, field, exponent, mode, suite or element text.
   */
  NX_STATUS_INVALID_CONFIG = 3,
  /**
   * The computation itself failed.
   */
  NX_STATUS_COMPUTATION = 4,
  /**
   * The caller's buffer is too small; the needed length was written.
   */
  NX_STATUS_BUFFER_TOO_SMALL = 5,
  NX_STATUS_PANIC = 6,
} NxStatus;

typedef enum NxMode {
  NX_MODE_FULL = 0,
  NX_MODE_GRADED = 1,
} NxMode;

/**
 * Opaque handle holding a validated configuration and its algebra.
 */
typedef struct NxSession NxSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a session.
 *
 * `field` may be null for the default prime field; `n_max` of 0 selects the
 * default truncation degree for `n`.
 *
 * # Safety
 * `field` must be null or a valid NUL-terminated string; `out` must be a
 * valid pointer.
 */
enum NxStatus nx_session_new(size_t n,
                             const char *field,
                             int64_t q12_exp,
                             enum NxMode mode,
                             size_t n_max,
                             struct NxSession **out);

/**
 * # Safety
 * `session` must be null or a pointer from [`nx_session_new`] not yet freed.
 */
void nx_session_free(struct NxSession *session);

/**
 * Dimension of the algebra `R`.
 *
 * # Safety
 * `session` and `out` must be valid pointers.
 */
enum NxStatus nx_algebra_dim(const struct NxSession *session, size_t *out);

/**
 * Writes `dim Ext^n` for `n = 0..=n_max` into `dims`.
 *
 * `len` receives the number of values; if it exceeds `capacity` nothing is
 * written to `dims` and [`NxStatus::BufferTooSmall`] is returned.
 *
 * # Safety
 * `session` and `len` must be valid; `dims` must hold `capacity` values.
 */
enum NxStatus nx_ext_dims(const struct NxSession *session,
                          size_t *dims,
                          size_t capacity,
                          size_t *len);

/**
 * Runs a verification suite and returns the JSON report in `json`.
 *
 * `passed` is set to whether every check passed. A failing check is not an
 * error: the status is still [`NxStatus::Ok`].
 *
 * # Safety
 * `session`, `suite`, `json` and `passed` must be valid pointers.
 */
enum NxStatus nx_verify(const struct NxSession *session,
                        const char *suite,
                        char **json,
                        bool *passed);

/**
 * Multiplies two algebra elements given in the textual format, for example
 * `"x1 y"` and `"2 * x2 + z^1 * x1"`.
 *
 * # Safety
 * `session`, `a`, `b` and `out` must be valid pointers.
 */
enum NxStatus nx_multiply(const struct NxSession *session,
                          const char *a,
                          const char *b,
                          char **out);

/**
 * Message for the last failing call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *nx_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void nx_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *nx_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NICHOLS_EXT_H */
