#ifndef GRADLIE_H
#define GRADLIE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum GlStatus {
  GL_STATUS_OK = 0,
  GL_STATUS_NULL_POINTER = 1,
  GL_STATUS_INVALID_UTF8 = 2,
  // Unreadable file or malformed input text.
  GL_STATUS_PARSE = 3,
  // Input parsed but is not a graded Lie algebra.
  GL_STATUS_INVALID = 4,
  // The requested computation rejected its arguments.
  GL_STATUS_COMPUTE = 5,
  GL_STATUS_PANIC = 6,
} GlStatus;

// Opaque handle to a validated graded Lie algebra.
typedef struct GlAlgebra GlAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or null if none. The
// pointer stays valid until the next failing call on the same thread.
const char *gl_last_error(void);

// Loads and validates an algebra definition file.
//
// # Safety
// `path` must be a nul-terminated string; `out` must be writable.
enum GlStatus gl_algebra_from_file(const char *path, struct GlAlgebra **out);

// Parses and validates algebra definition text.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum GlStatus gl_algebra_from_str(const char *text, struct GlAlgebra **out);

// Releases an algebra. Null is ignored.
//
// # Safety
// `alg` must come from this library and not be used afterwards.
void gl_algebra_free(struct GlAlgebra *alg);

// # Safety
// `alg` must be a live handle; `out` must be writable.
enum GlStatus gl_algebra_dim(const struct GlAlgebra *alg, size_t *out);

// Straightens a word of basis names (space separated) and writes the
// normal form, e.g. `1 * e f + -1 * h`.
//
// # Safety
// `alg` must be a live handle, `word` a nul-terminated string, `out`
// writable. The result must be released with [`gl_string_free`].
enum GlStatus gl_normalize(const struct GlAlgebra *alg, const char *word, char **out);

// Number of graded PBW monomials of length at most `max_len`.
//
// # Safety
// `alg` must be a live handle; `out` must be writable.
enum GlStatus gl_pbw_basis_count(const struct GlAlgebra *alg, size_t max_len, size_t *out);

// Whether the support has pairwise distinct images in the
// abelianized universal group.
//
// # Safety
// `alg` must be a live handle; `out` must be writable.
enum GlStatus gl_is_abelian(const struct GlAlgebra *alg, bool *out);

// Runs the graded Witt check on the basis letters up to `max_len`.
//
// # Safety
// `alg` must be a live handle; `out` must be writable.
enum GlStatus gl_witt_check(const struct GlAlgebra *alg, size_t max_len, bool *out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void gl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRADLIE_H */
