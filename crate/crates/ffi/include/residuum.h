#ifndef RESIDUUM_H
#define RESIDUUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `Ok` is zero.
 */
typedef enum ResiduumStatus {
  RESIDUUM_STATUS_OK = 0,
  RESIDUUM_STATUS_NULL_POINTER = 1,
  RESIDUUM_STATUS_INVALID_ARGUMENT = 2,
  RESIDUUM_STATUS_NOT_COFINITE = 3,
  RESIDUUM_STATUS_UNSUPPORTED = 4,
  /**
   * a value does not fit the fixed-width output
   */
  RESIDUUM_STATUS_OVERFLOW = 5,
  RESIDUUM_STATUS_BUFFER_TOO_SMALL = 6,
  /**
   * a panic was caught at the boundary
   */
  RESIDUUM_STATUS_INTERNAL = 7,
} ResiduumStatus;

/**
 * A monomial ideal, listed by its minimal generators.
 */
typedef struct ResiduumIdeal ResiduumIdeal;

/**
 * A monomial sequence `z^A`.
 */
typedef struct ResiduumSeq ResiduumSeq;

/**
 * `e^p(z^A)` as a fraction. `determined` is false when the facet relations
 * leave the value open; `exact` is true when every coefficient is known
 * without appeal to the relations.
 */
typedef struct ResiduumMultiplicity {
  bool determined;
  bool exact;
  int64_t numerator;
  int64_t denominator;
} ResiduumMultiplicity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next call into this library on the same
 * thread.
 */
const char *residuum_last_error(void);

/**
 * Builds a sequence from `count` exponent vectors of length `dim`, stored
 * row by row in `exps`.
 *
 * # Safety
 * `exps` must be valid for `dim * count` reads and `out` for one write.
 */
enum ResiduumStatus residuum_seq_new(size_t dim,
                                     const uint64_t *exps,
                                     size_t count,
                                     struct ResiduumSeq **out);

/**
 * # Safety
 * `seq` must be null or a handle from `residuum_seq_new` not yet freed.
 */
void residuum_seq_free(struct ResiduumSeq *seq);

/**
 * `ann R^p(z^A)`. A null `weights` means `p = (1, ..., 1)`.
 *
 * # Safety
 * `seq` must be a live handle, `weights` null or valid for `len` reads and
 * `out` valid for one write.
 */
enum ResiduumStatus residuum_annihilator(const struct ResiduumSeq *seq,
                                         const uint64_t *weights,
                                         size_t len,
                                         struct ResiduumIdeal **out);

/**
 * Number of minimal generators, or 0 for a null handle.
 *
 * # Safety
 * `ideal` must be null or a live handle.
 */
size_t residuum_ideal_len(const struct ResiduumIdeal *ideal);

/**
 * Number of variables, or 0 for a null handle.
 *
 * # Safety
 * `ideal` must be null or a live handle.
 */
size_t residuum_ideal_dim(const struct ResiduumIdeal *ideal);

/**
 * Copies the generators row by row into `buf`, which must hold
 * `len * dim` entries; `written` receives the number of entries needed.
 * Generators are in lexicographic order.
 *
 * # Safety
 * `ideal` must be a live handle, `buf` valid for `cap` writes and
 * `written` null or valid for one write.
 */
enum ResiduumStatus residuum_ideal_gens(const struct ResiduumIdeal *ideal,
                                        uint64_t *buf,
                                        size_t cap,
                                        size_t *written);

/**
 * # Safety
 * `ideal` must be null or a live handle.
 */
void residuum_ideal_free(struct ResiduumIdeal *ideal);

/**
 * `e^p(z^A)`. A null `weights` means `p = (1, ..., 1)`. An undetermined
 * value is not an error: `out->determined` is false and the fraction 0/1.
 *
 * # Safety
 * `seq` must be a live handle, `weights` null or valid for `len` reads and
 * `out` valid for one write.
 */
enum ResiduumStatus residuum_multiplicity(const struct ResiduumSeq *seq,
                                          const uint64_t *weights,
                                          size_t len,
                                          struct ResiduumMultiplicity *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESIDUUM_H */
