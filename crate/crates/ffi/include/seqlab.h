#ifndef SEQLAB_H
#define SEQLAB_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Engine property bits returned by [`seqlab_engine_flags`].
 */
#define SEQLAB_FLAG_SYMMETRIC 1

#define SEQLAB_FLAG_UNCONDITIONAL 2

#define SEQLAB_FLAG_LATTICE 4

/**
 * Status codes; the numbering follows the command-line exit codes.
 */
typedef enum SeqlabStatus {
  SEQLAB_STATUS_OK = 0,
  /**
   * Unknown engine id, or the engine lacks a required property.
   */
  SEQLAB_STATUS_BAD_ENGINE = 2,
  /**
   * Malformed input: bad index, duplicate, non-finite value, bad text.
   */
  SEQLAB_STATUS_PARSE = 3,
  /**
   * Support too large for an exhaustive search.
   */
  SEQLAB_STATUS_SIZE_LIMIT = 4,
  /**
   * Any other unmet precondition.
   */
  SEQLAB_STATUS_PRECONDITION = 5,
  SEQLAB_STATUS_NULL_ARGUMENT = 6,
  /**
   * A panic was caught; the handle arguments may be in an unspecified state.
   */
  SEQLAB_STATUS_INTERNAL = 7,
} SeqlabStatus;

typedef struct SeqlabEngine SeqlabEngine;

/**
 * A finite-support vector under construction. Indices must be pushed in
 * strictly increasing order.
 */
typedef struct SeqlabVector SeqlabVector;

/**
 * Message of the last failure on this thread, or an empty string. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *seqlab_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *seqlab_version(void);

/**
 * A new empty vector. Never null.
 */
struct SeqlabVector *seqlab_vector_new(void);

/**
 * Parses the text format (`index:value` per line, `#` comments) into a new
 * vector stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SeqlabStatus seqlab_vector_parse(const char *text, struct SeqlabVector **out);

/**
 * Appends `value` at `index`. Indices start at 1 and must increase; zero
 * values are accepted and ignored.
 *
 * # Safety
 * `v` must come from [`seqlab_vector_new`] or [`seqlab_vector_parse`].
 */
enum SeqlabStatus seqlab_vector_push(struct SeqlabVector *v, uintptr_t index, double value);

/**
 * Number of nonzero coordinates; 0 for null.
 *
 * # Safety
 * `v` must be null or a live vector handle.
 */
uintptr_t seqlab_vector_len(const struct SeqlabVector *v);

/**
 * # Safety
 * `v` must be null or a live vector handle; it is invalid afterwards.
 */
void seqlab_vector_free(struct SeqlabVector *v);

/**
 * Resolves an engine id such as `day`, `c0`, `orlicz:default` or
 * `nakano:linear` into `*out`.
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SeqlabStatus seqlab_engine_new(const char *id, struct SeqlabEngine **out);

/**
 * # Safety
 * `e` must be null or a live engine handle; it is invalid afterwards.
 */
void seqlab_engine_free(struct SeqlabEngine *e);

/**
 * Combination of the `SEQLAB_FLAG_*` bits; 0 for null.
 *
 * # Safety
 * `e` must be null or a live engine handle.
 */
uint32_t seqlab_engine_flags(const struct SeqlabEngine *e);

/**
 * Writes the canonical engine name (NUL-terminated, truncated to fit)
 * into `buf` of `len` bytes and returns the full name length.
 *
 * # Safety
 * `e` must be a live engine handle; `buf` must hold `len` bytes or be null.
 */
uintptr_t seqlab_engine_name(const struct SeqlabEngine *e, char *buf, uintptr_t len);

/**
 * `‖x‖`.
 *
 * # Safety
 * Live handles and a valid `out`.
 */
enum SeqlabStatus seqlab_norm(const struct SeqlabEngine *e,
                              const struct SeqlabVector *v,
                              double *out);

/**
 * `sup` over sign changes of `x`; supports of at most 20 points.
 *
 * # Safety
 * Live handles and a valid `out`.
 */
enum SeqlabStatus seqlab_envelope_norm(const struct SeqlabEngine *e,
                                       const struct SeqlabVector *v,
                                       double *out);

/**
 * `sup_{|A| <= n} ‖P_A x‖`.
 *
 * # Safety
 * Live handles and a valid `out`.
 */
enum SeqlabStatus seqlab_subset_sup(const struct SeqlabEngine *e,
                                    const struct SeqlabVector *v,
                                    uintptr_t n,
                                    double *out);

/**
 * `‖x‖ - sup_{|A| <= n} ‖P_A x‖`.
 *
 * # Safety
 * Live handles and a valid `out`.
 */
enum SeqlabStatus seqlab_subset_gap(const struct SeqlabEngine *e,
                                    const struct SeqlabVector *v,
                                    uintptr_t n,
                                    double *out);

/**
 * `‖x‖ - ‖P_{1..n} x‖`.
 *
 * # Safety
 * Live handles and a valid `out`.
 */
enum SeqlabStatus seqlab_prefix_gap(const struct SeqlabEngine *e,
                                    const struct SeqlabVector *v,
                                    uintptr_t n,
                                    double *out);

/**
 * Fills `out[0..n_max]` with `λ_1, .., λ_{n_max}`.
 *
 * # Safety
 * `e` must be a live handle and `out` must hold `n_max` doubles.
 */
enum SeqlabStatus seqlab_lambda(const struct SeqlabEngine *e, uintptr_t n_max, double *out);

#endif  /* SEQLAB_H */
