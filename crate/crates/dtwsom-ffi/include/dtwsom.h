#ifndef DTWSOM_H
#define DTWSOM_H

/* Generated from the dtwsom-ffi crate by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call in this ABI.
 */
typedef enum {
  /**
   * The call succeeded and all out-parameters are set.
   */
  DTWSOM_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  DTWSOM_STATUS_NULL_POINTER = 1,
  /**
   * An argument violated a documented precondition.
   */
  DTWSOM_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The warping window cannot bridge the two sequence lengths.
   */
  DTWSOM_STATUS_INFEASIBLE_WINDOW = 3,
  /**
   * An index argument was past the end of the collection.
   */
  DTWSOM_STATUS_INDEX_OUT_OF_RANGE = 4,
  /**
   * The caller's buffer is smaller than the data to copy.
   */
  DTWSOM_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * Serialized text was not a valid document.
   */
  DTWSOM_STATUS_JSON_ERROR = 6,
  /**
   * The library panicked; state may be stale but memory is intact.
   */
  DTWSOM_STATUS_INTERNAL = 7,
} DtwsomStatus;

/**
 * A warping alignment between two sequences.
 */
typedef struct DtwsomAlignment DtwsomAlignment;

/**
 * Motifs extracted from one series, most significant first.
 */
typedef struct DtwsomMotifs DtwsomMotifs;

/**
 * A trained (or freshly initialized) map plus its training trace.
 */
typedef struct DtwsomNetwork DtwsomNetwork;

/**
 * A list of training patterns sharing one dimension count.
 */
typedef struct DtwsomPatterns DtwsomPatterns;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *dtwsom_version(void);

/**
 * Message describing this thread's most recent failure, or null if every
 * call so far succeeded. The pointer stays valid until the next failing
 * call on the same thread.
 */
const char *dtwsom_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 *
 * `text` must have come from a dtwsom call and not have been freed already.
 */
void dtwsom_string_free(char *text);

/**
 * Computes the warping distance between two sequences laid out as
 * point-major `points * dim` arrays. A negative `window` means
 * unconstrained; otherwise the alignment may stray at most `window` points
 * from the diagonal.
 *
 * # Safety
 *
 * `a` and `b` must point to `a_points * dim` and `b_points * dim` readable
 * doubles; `out_distance` must be writable.
 */
DtwsomStatus dtwsom_distance(const double *a,
                             size_t a_points,
                             const double *b,
                             size_t b_points,
                             size_t dim,
                             int64_t window,
                             double *out_distance);

/**
 * Computes the full warping alignment between two sequences. The handle
 * carries the distance and the matched index pairs.
 *
 * # Safety
 *
 * Pointer arguments as in [`dtwsom_distance`]; `out_alignment` must be
 * writable. Free the handle with [`dtwsom_alignment_free`].
 */
DtwsomStatus dtwsom_align(const double *a,
                          size_t a_points,
                          const double *b,
                          size_t b_points,
                          size_t dim,
                          int64_t window,
                          DtwsomAlignment **out_alignment);

/**
 * Distance of an alignment.
 *
 * # Safety
 *
 * `alignment` must be a live handle; `out_distance` must be writable.
 */
DtwsomStatus dtwsom_alignment_distance(const DtwsomAlignment *alignment, double *out_distance);

/**
 * Number of matched index pairs in an alignment.
 *
 * # Safety
 *
 * `alignment` must be a live handle; `out_len` must be writable.
 */
DtwsomStatus dtwsom_alignment_len(const DtwsomAlignment *alignment, size_t *out_len);

/**
 * The `at`-th matched pair of an alignment, in path order.
 *
 * # Safety
 *
 * `alignment` must be a live handle; `out_a` and `out_b` must be writable.
 */
DtwsomStatus dtwsom_alignment_pair(const DtwsomAlignment *alignment,
                                   size_t at,
                                   size_t *out_a,
                                   size_t *out_b);

/**
 * Releases an alignment handle. Null is ignored.
 *
 * # Safety
 *
 * `alignment` must have come from [`dtwsom_align`] and not have been freed
 * already.
 */
void dtwsom_alignment_free(DtwsomAlignment *alignment);

/**
 * Creates an empty pattern list whose sequences will all have `dim` values
 * per point.
 *
 * # Safety
 *
 * `out_patterns` must be writable. Free the handle with
 * [`dtwsom_patterns_free`].
 */
DtwsomStatus dtwsom_patterns_new(size_t dim, DtwsomPatterns **out_patterns);

/**
 * Appends one sequence of `points` points to a pattern list.
 *
 * # Safety
 *
 * `patterns` must be a live handle; `values` must point to `points * dim`
 * readable doubles, where `dim` was fixed at construction.
 */
DtwsomStatus dtwsom_patterns_push(DtwsomPatterns *patterns, const double *values, size_t points);

/**
 * Generates labeled synthetic motif centers and keeps the centers, in the
 * generator's deterministic order (clusters cycle with period 3).
 *
 * # Safety
 *
 * `out_patterns` must be writable. Free the handle with
 * [`dtwsom_patterns_free`].
 */
DtwsomStatus dtwsom_patterns_synthetic(size_t count, uint64_t seed, DtwsomPatterns **out_patterns);

/**
 * Number of sequences in a pattern list.
 *
 * # Safety
 *
 * `patterns` must be a live handle; `out_len` must be writable.
 */
DtwsomStatus dtwsom_patterns_len(const DtwsomPatterns *patterns, size_t *out_len);

/**
 * Values per point shared by every sequence in the list.
 *
 * # Safety
 *
 * `patterns` must be a live handle; `out_dim` must be writable.
 */
DtwsomStatus dtwsom_patterns_dim(const DtwsomPatterns *patterns, size_t *out_dim);

/**
 * Point count of the `at`-th sequence.
 *
 * # Safety
 *
 * `patterns` must be a live handle; `out_points` must be writable.
 */
DtwsomStatus dtwsom_patterns_sequence_len(const DtwsomPatterns *patterns,
                                          size_t at,
                                          size_t *out_points);

/**
 * Copies the `at`-th sequence, point major, into `buffer`
 * (`points * dim` elements needed).
 *
 * # Safety
 *
 * `patterns` must be a live handle; `buffer` must hold `capacity` writable
 * doubles.
 */
DtwsomStatus dtwsom_patterns_sequence_values(const DtwsomPatterns *patterns,
                                             size_t at,
                                             double *buffer,
                                             size_t capacity);

/**
 * Releases a pattern list. Null is ignored.
 *
 * # Safety
 *
 * `patterns` must have come from this library and not have been freed
 * already.
 */
void dtwsom_patterns_free(DtwsomPatterns *patterns);

/**
 * Initializes a `rows x cols` map from the patterns and trains it.
 *
 * `radius` at or below zero selects the default (half the larger grid
 * side); a negative `window` leaves the warping unconstrained. With
 * `anchor_count` zero the units are sampled randomly; otherwise the listed
 * pattern indices are pinned to the cells nearest the grid diagonal first.
 *
 * # Safety
 *
 * `patterns` must be a live handle; `anchors` must point to `anchor_count`
 * readable indices (null allowed when the count is zero); `out_network`
 * must be writable. Free the handle with [`dtwsom_network_free`].
 */
DtwsomStatus dtwsom_network_train(const DtwsomPatterns *patterns,
                                  size_t rows,
                                  size_t cols,
                                  size_t epochs,
                                  double alpha,
                                  double radius,
                                  int64_t window,
                                  uint64_t seed,
                                  const size_t *anchors,
                                  size_t anchor_count,
                                  DtwsomNetwork **out_network);

/**
 * Grid shape of a network.
 *
 * # Safety
 *
 * `network` must be a live handle; `out_rows` and `out_cols` must be
 * writable.
 */
DtwsomStatus dtwsom_network_shape(const DtwsomNetwork *network, size_t *out_rows, size_t *out_cols);

/**
 * Values per point in every unit of a network.
 *
 * # Safety
 *
 * `network` must be a live handle; `out_dim` must be writable.
 */
DtwsomStatus dtwsom_network_dim(const DtwsomNetwork *network, size_t *out_dim);

/**
 * Completed training epochs of a network.
 *
 * # Safety
 *
 * `network` must be a live handle; `out_epoch` must be writable.
 */
DtwsomStatus dtwsom_network_epoch(const DtwsomNetwork *network, size_t *out_epoch);

/**
 * Point count of one unit, indexed row major.
 *
 * # Safety
 *
 * `network` must be a live handle; `out_points` must be writable.
 */
DtwsomStatus dtwsom_network_unit_len(const DtwsomNetwork *network, size_t unit, size_t *out_points);

/**
 * Copies one unit's values, point major, into `buffer`.
 *
 * # Safety
 *
 * `network` must be a live handle; `buffer` must hold `capacity` writable
 * doubles.
 */
DtwsomStatus dtwsom_network_unit_values(const DtwsomNetwork *network,
                                        size_t unit,
                                        double *buffer,
                                        size_t capacity);

/**
 * Finds the best-matching unit for one pattern (row-major index and
 * warping distance).
 *
 * # Safety
 *
 * `network` must be a live handle; `values` must point to
 * `points * dim` readable doubles; `out_unit` and `out_distance` must be
 * writable.
 */
DtwsomStatus dtwsom_network_bmu(const DtwsomNetwork *network,
                                const double *values,
                                size_t points,
                                size_t *out_unit,
                                double *out_distance);

/**
 * Mean distance from each pattern to its best-matching unit.
 *
 * # Safety
 *
 * Both handles must be live; `out_error` must be writable.
 */
DtwsomStatus dtwsom_network_quantization_error(const DtwsomNetwork *network,
                                               const DtwsomPatterns *patterns,
                                               double *out_error);

/**
 * Number of recorded training epochs (zero for a network loaded from
 * JSON, since the trace is not part of the model document).
 *
 * # Safety
 *
 * `network` must be a live handle; `out_len` must be writable.
 */
DtwsomStatus dtwsom_network_trace_len(const DtwsomNetwork *network, size_t *out_len);

/**
 * Copies the per-epoch quantization errors into `buffer`.
 *
 * # Safety
 *
 * `network` must be a live handle; `buffer` must hold `capacity` writable
 * doubles.
 */
DtwsomStatus dtwsom_network_trace_quantization_error(const DtwsomNetwork *network,
                                                     double *buffer,
                                                     size_t capacity);

/**
 * Copies the per-epoch learning rates into `buffer`.
 *
 * # Safety
 *
 * `network` must be a live handle; `buffer` must hold `capacity` writable
 * doubles.
 */
DtwsomStatus dtwsom_network_trace_alpha(const DtwsomNetwork *network,
                                        double *buffer,
                                        size_t capacity);

/**
 * Copies the per-epoch neighborhood radii into `buffer`.
 *
 * # Safety
 *
 * `network` must be a live handle; `buffer` must hold `capacity` writable
 * doubles.
 */
DtwsomStatus dtwsom_network_trace_radius(const DtwsomNetwork *network,
                                         double *buffer,
                                         size_t capacity);

/**
 * Copies the U-matrix (mean warping distance to grid neighbors, row
 * major, `rows * cols` values) into `buffer`.
 *
 * # Safety
 *
 * `network` must be a live handle; `buffer` must hold `capacity` writable
 * doubles.
 */
DtwsomStatus dtwsom_network_u_matrix(const DtwsomNetwork *network, double *buffer, size_t capacity);

/**
 * Copies per-unit winner counts over the patterns (row major,
 * `rows * cols` values) into `buffer`.
 *
 * # Safety
 *
 * Both handles must be live; `buffer` must hold `capacity` writable
 * elements.
 */
DtwsomStatus dtwsom_network_winner_counts(const DtwsomNetwork *network,
                                          const DtwsomPatterns *patterns,
                                          size_t *buffer,
                                          size_t capacity);

/**
 * Serializes a network to a JSON string owned by the caller; release it
 * with [`dtwsom_string_free`]. The training trace is not included.
 *
 * # Safety
 *
 * `network` must be a live handle; `out_text` must be writable.
 */
DtwsomStatus dtwsom_network_to_json(const DtwsomNetwork *network, char **out_text);

/**
 * Restores a network from its JSON form. The restored handle has an empty
 * training trace.
 *
 * # Safety
 *
 * `text` must be a NUL-terminated string; `out_network` must be writable.
 * Free the handle with [`dtwsom_network_free`].
 */
DtwsomStatus dtwsom_network_from_json(const char *text, DtwsomNetwork **out_network);

/**
 * Releases a network handle. Null is ignored.
 *
 * # Safety
 *
 * `network` must have come from this library and not have been freed
 * already.
 */
void dtwsom_network_free(DtwsomNetwork *network);

/**
 * Computes the z-normalized matrix profile of a univariate series and
 * copies it into two caller buffers of `len - window + 1` elements each.
 *
 * # Safety
 *
 * `values` must point to `len` readable doubles; `out_distances` and
 * `out_indices` must each hold `capacity` writable elements.
 */
DtwsomStatus dtwsom_matrix_profile(const double *values,
                                   size_t len,
                                   size_t window,
                                   double *out_distances,
                                   size_t *out_indices,
                                   size_t capacity);

/**
 * Extracts up to `max_motifs` motifs of length `window` from a univariate
 * series via its matrix profile.
 *
 * # Safety
 *
 * `values` must point to `len` readable doubles; `out_motifs` must be
 * writable. Free the handle with [`dtwsom_motifs_free`].
 */
DtwsomStatus dtwsom_extract_motifs(const double *values,
                                   size_t len,
                                   size_t window,
                                   size_t max_motifs,
                                   DtwsomMotifs **out_motifs);

/**
 * Number of extracted motifs.
 *
 * # Safety
 *
 * `motifs` must be a live handle; `out_len` must be writable.
 */
DtwsomStatus dtwsom_motifs_len(const DtwsomMotifs *motifs, size_t *out_len);

/**
 * Subsequence window the motifs were extracted with.
 *
 * # Safety
 *
 * `motifs` must be a live handle; `out_window` must be writable.
 */
DtwsomStatus dtwsom_motifs_window(const DtwsomMotifs *motifs, size_t *out_window);

/**
 * Center offset, seed-pair distance, and occurrence count of the `at`-th
 * motif (rank order, most significant first).
 *
 * # Safety
 *
 * `motifs` must be a live handle; the out-pointers must be writable.
 */
DtwsomStatus dtwsom_motifs_info(const DtwsomMotifs *motifs,
                                size_t at,
                                size_t *out_center_offset,
                                double *out_pair_distance,
                                size_t *out_member_count);

/**
 * Copies the `at`-th motif's occurrence offsets into `buffer`.
 *
 * # Safety
 *
 * `motifs` must be a live handle; `buffer` must hold `capacity` writable
 * elements.
 */
DtwsomStatus dtwsom_motifs_member_offsets(const DtwsomMotifs *motifs,
                                          size_t at,
                                          size_t *buffer,
                                          size_t capacity);

/**
 * Copies the `at`-th motif's center values (`window` doubles) into
 * `buffer`.
 *
 * # Safety
 *
 * `motifs` must be a live handle; `buffer` must hold `capacity` writable
 * doubles.
 */
DtwsomStatus dtwsom_motifs_center_values(const DtwsomMotifs *motifs,
                                         size_t at,
                                         double *buffer,
                                         size_t capacity);

/**
 * Builds a pattern list from the motif centers, in rank order, ready for
 * [`dtwsom_network_train`].
 *
 * # Safety
 *
 * `motifs` must be a live handle; `out_patterns` must be writable. Free
 * the handle with [`dtwsom_patterns_free`].
 */
DtwsomStatus dtwsom_motifs_to_patterns(const DtwsomMotifs *motifs, DtwsomPatterns **out_patterns);

/**
 * Releases a motif handle. Null is ignored.
 *
 * # Safety
 *
 * `motifs` must have come from [`dtwsom_extract_motifs`] and not have been
 * freed already.
 */
void dtwsom_motifs_free(DtwsomMotifs *motifs);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DTWSOM_H */
