#ifndef AXLAB_H
#define AXLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AxlabStatus {
  AxlabStatus_Ok = 0,
  AxlabStatus_NullPointer = 1,
  AxlabStatus_InvalidUtf8 = 2,
  AxlabStatus_ParseError = 3,
  AxlabStatus_InvalidParams = 4,
  AxlabStatus_VerificationFailed = 5,
  AxlabStatus_UnknownAlgebra = 6,
  AxlabStatus_Internal = 7,
} AxlabStatus;

/**
 * An algebra with its two axes and fusion parameters.
 */
typedef struct AxlabAlgebra AxlabAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an algebra document.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum AxlabStatus axlab_algebra_from_json(const char *json, struct AxlabAlgebra **out);

/**
 * Builds a catalog algebra. `params_json` is NULL or an object such as {"xi": "1/4", "n": "3"};
 * `field` is NULL for ℚ or a descriptor such as "fp:11" or "qsqrt:97".
 *
 * # Safety
 * String arguments are NULL (where allowed) or NUL-terminated; `out` is writable.
 */
enum AxlabStatus axlab_construct(const char *family,
                                 const char *params_json,
                                 const char *field,
                                 struct AxlabAlgebra **out);

/**
 * Releases a handle; NULL is ignored.
 *
 * # Safety
 * `alg` is NULL or a handle from this library not yet freed.
 */
void axlab_algebra_free(struct AxlabAlgebra *alg);

/**
 * # Safety
 * `alg` is a live handle; `out` is writable.
 */
enum AxlabStatus axlab_algebra_dim(const struct AxlabAlgebra *alg, uintptr_t *out);

/**
 * The algebra document as JSON.
 *
 * # Safety
 * `alg` is a live handle; `out` is writable.
 */
enum AxlabStatus axlab_algebra_to_json(const struct AxlabAlgebra *alg, char **out);

/**
 * Runs every check; the report is written even when a check fails (status VerificationFailed).
 *
 * # Safety
 * `alg` is a live handle; `report` is writable.
 */
enum AxlabStatus axlab_verify(const struct AxlabAlgebra *alg, char **report);

/**
 * Classifies the algebra; UnknownAlgebra still writes the report.
 *
 * # Safety
 * `alg` is a live handle; `report` is writable.
 */
enum AxlabStatus axlab_classify(const struct AxlabAlgebra *alg, char **report);

/**
 * Releases a string returned by this library; NULL is ignored.
 *
 * # Safety
 * `s` is NULL or a string from this library not yet freed.
 */
void axlab_string_free(char *s);

/**
 * The message of the last failed call on this thread; empty after a success. Valid until the next call.
 */
const char *axlab_last_error(void);

/**
 * The library version, a static string.
 */
const char *axlab_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AXLAB_H */
