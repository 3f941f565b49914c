#ifndef NORI_KERNEL_H
#define NORI_KERNEL_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NoriStatus {
  NORI_STATUS_OK = 0,
  /**
   * A mathematical identity failed on the given data.
   */
  NORI_STATUS_FALSIFIED = 1,
  NORI_STATUS_INPUT_ERROR = 2,
  NORI_STATUS_NULL_POINTER = 3,
  NORI_STATUS_INVALID_UTF8 = 4,
  /**
   * Internal error; the message names the panic.
   */
  NORI_STATUS_PANIC = 5,
} NoriStatus;

typedef struct NoriAlgebra NoriAlgebra;

typedef struct NoriComplex NoriComplex;

typedef struct NoriRepresentation NoriRepresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *nori_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void nori_string_free(char *s);

/**
 * Runs the command line with `argc` arguments (program name excluded) and
 * stores the report in `*report`. Returns the exit code (0, 1 or 2), or -1
 * if an argument pointer is invalid.
 *
 * # Safety
 * `argv` must point to `argc` nul-terminated strings; `report` must be writable.
 */
int nori_run(int argc, const char *const *argv, char **report);

/**
 * Parses a representation document. `field` may be null to take the field
 * from the document.
 *
 * # Safety
 * `json` (and `field` unless null) must be nul-terminated; `out` must be writable.
 */
enum NoriStatus nori_representation_from_json(const char *json,
                                              const char *field,
                                              struct NoriRepresentation **out);

/**
 * # Safety
 * `rep` must be null or a live handle from this library.
 */
void nori_representation_free(struct NoriRepresentation *rep);

/**
 * Number of vertices.
 *
 * # Safety
 * `rep` must be a live handle; `out` must be writable.
 */
enum NoriStatus nori_representation_vertex_count(const struct NoriRepresentation *rep, size_t *out);

/**
 * End(H) over the whole diagram.
 *
 * # Safety
 * `rep` must be a live handle; `out` must be writable.
 */
enum NoriStatus nori_end_algebra(const struct NoriRepresentation *rep, struct NoriAlgebra **out);

/**
 * Dimension of End^∨(H) after checking both coalgebra axioms.
 *
 * # Safety
 * `rep` must be a live handle; `out` must be writable.
 */
enum NoriStatus nori_endvee_dim(const struct NoriRepresentation *rep, size_t *out);

/**
 * # Safety
 * `alg` must be null or a live handle from this library.
 */
void nori_algebra_free(struct NoriAlgebra *alg);

/**
 * # Safety
 * `alg` must be a live handle; `out` must be writable.
 */
enum NoriStatus nori_algebra_dim(const struct NoriAlgebra *alg, size_t *out);

/**
 * Writes 1 if the algebra is semisimple, 0 if not, -1 if undecided.
 *
 * # Safety
 * `alg` must be a live handle; `out` must be writable.
 */
enum NoriStatus nori_algebra_is_semisimple(const struct NoriAlgebra *alg, int *out);

/**
 * Parses a complex document; d∘d must vanish.
 *
 * # Safety
 * `json` (and `field` unless null) must be nul-terminated; `out` must be writable.
 */
enum NoriStatus nori_complex_from_json(const char *json,
                                       const char *field,
                                       struct NoriComplex **out);

/**
 * # Safety
 * `c` must be null or a live handle from this library.
 */
void nori_complex_free(struct NoriComplex *c);

/**
 * Cohomology dimensions from the first degree on. `*len` receives the number
 * of degrees; at most `cap` values are written to `dims`, which may be null
 * when `cap` is 0.
 *
 * # Safety
 * `c` must be a live handle; `dims` must have room for `cap` values; `len` must be writable.
 */
enum NoriStatus nori_complex_cohomology_dims(const struct NoriComplex *c,
                                             size_t *dims,
                                             size_t cap,
                                             size_t *len);

/**
 * Lowest degree of the complex.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum NoriStatus nori_complex_start(const struct NoriComplex *c, int64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NORI_KERNEL_H */
