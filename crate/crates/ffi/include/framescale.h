#ifndef FRAMESCALE_H
#define FRAMESCALE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum FsStatus {
  FS_STATUS_OK = 0,
  FS_STATUS_NULL_POINTER = 1,
  FS_STATUS_INVALID_INPUT = 2,
  FS_STATUS_DIMENSION = 3,
  FS_STATUS_DEGENERATE_FRAME = 4,
  FS_STATUS_DEGENERATE_PAIR = 5,
  FS_STATUS_NORMAL_POSITION = 6,
  FS_STATUS_NOT_SCALABLE = 7,
  FS_STATUS_PRECONDITION = 8,
  FS_STATUS_BUDGET_EXCEEDED = 9,
  FS_STATUS_INTERNAL_CONSISTENCY = 10,
  FS_STATUS_PANIC = 11,
} FsStatus;

// How a scaling was obtained.
typedef enum FsMethod {
  FS_METHOD_TIGHT_WITNESS = 0,
  FS_METHOD_EQUAL_PAIR = 1,
  FS_METHOD_BEST_PAIR = 2,
  FS_METHOD_INLINE_COMPONENT = 3,
  FS_METHOD_RESTRICTED = 4,
  FS_METHOD_GRID_SEARCH = 5,
  FS_METHOD_REFINED = 6,
} FsMethod;

// Opaque frame handle.
typedef struct FsFrame FsFrame;

// Entries of the symmetric frame operator.
typedef struct FsOperator {
  double s11;
  double s12;
  double s22;
} FsOperator;

// Optimal frame bounds. `cond` is `INFINITY` when the family does not span.
typedef struct FsBounds {
  double lower;
  double upper;
  double cond;
} FsBounds;

// Summary of a computed scaling; the weights go to a separate buffer.
// `pair_i` and `pair_j` are -1 when no distinguished pair applies.
typedef struct FsScalingInfo {
  enum FsMethod method;
  struct FsBounds bounds;
  int64_t pair_i;
  int64_t pair_j;
} FsScalingInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a frame from `m` interleaved coordinates `x0, y0, x1, y1, ...`
// (so `xy` holds `2 m` doubles). Requires `m >= 2`, finite, nonzero vectors.
//
// # Safety
// `xy` must point to `2 * m` readable doubles and `out` must be writable.
enum FsStatus fs_frame_new(const double *xy, size_t m, struct FsFrame **out);

// Releases a frame. Null is ignored.
//
// # Safety
// `frame` must come from `fs_frame_new` and not have been freed.
void fs_frame_free(struct FsFrame *frame);

// Number of vectors, or 0 for a null handle.
//
// # Safety
// `frame` must be null or a live handle.
size_t fs_frame_len(const struct FsFrame *frame);

// Frame operator of the family scaled by `weights` (null: unscaled).
//
// # Safety
// `frame` must be a live handle, `weights` null or `fs_frame_len` doubles,
// `out` writable.
enum FsStatus fs_frame_operator(const struct FsFrame *frame,
                                const double *weights,
                                struct FsOperator *out);

// Frame bounds of the family scaled by `weights` (null: unscaled).
//
// # Safety
// As for `fs_frame_operator`.
enum FsStatus fs_frame_bounds(const struct FsFrame *frame,
                              const double *weights,
                              struct FsBounds *out);

// Tightness test of the scaled family at relative tolerance `tol`.
//
// # Safety
// As for `fs_frame_operator`, with `out_tight` writable.
enum FsStatus fs_is_tight(const struct FsFrame *frame,
                          const double *weights,
                          double tol,
                          bool *out_tight);

// Scalability verdict. `out_spread` receives the angular spread of the
// directions modulo π. When scalable and `out_witness` is not null, a
// tight-making weight vector is written there.
//
// # Safety
// `frame` live; `out_scalable`, `out_spread` writable; `out_witness` null
// or `fs_frame_len` writable doubles.
enum FsStatus fs_classify(const struct FsFrame *frame,
                          bool *out_scalable,
                          double *out_spread,
                          double *out_witness);

// Minimum-condition scaling: a tight witness when one exists, otherwise
// the best equalized pair.
//
// # Safety
// `frame` live; `out_weights` holds `fs_frame_len` doubles; `out_info` writable.
enum FsStatus fs_min_condition_scaling(const struct FsFrame *frame,
                                       double *out_weights,
                                       struct FsScalingInfo *out_info);

// Best-pair scaling of a non-scalable frame.
//
// # Safety
// As for `fs_min_condition_scaling`.
enum FsStatus fs_best_pair_scaling(const struct FsFrame *frame,
                                   double *out_weights,
                                   struct FsScalingInfo *out_info);

// Budgeted scaling with every weight in `[1 - epsilon, 1 + epsilon]`.
//
// # Safety
// As for `fs_min_condition_scaling`.
enum FsStatus fs_restricted_scaling(const struct FsFrame *frame,
                                    double epsilon,
                                    double *out_weights,
                                    struct FsScalingInfo *out_info);

// Grid search with `levels` equally spaced values per weight on `[lo, hi]`,
// optionally refined by coordinate descent.
//
// # Safety
// As for `fs_min_condition_scaling`.
enum FsStatus fs_grid_search(const struct FsFrame *frame,
                             double lo,
                             double hi,
                             size_t levels,
                             bool refine,
                             double *out_weights,
                             struct FsScalingInfo *out_info);

// Recomputes the condition number of the scaled family and compares it
// with `claimed` at relative tolerance `tol`.
//
// # Safety
// `frame` live; `weights` holds `fs_frame_len` doubles; outputs writable.
enum FsStatus fs_verify_scaling(const struct FsFrame *frame,
                                const double *weights,
                                double claimed,
                                double tol,
                                bool *out_passed,
                                double *out_cond);

// Message for the last failed call on this thread, empty if none. The
// pointer stays valid until the next failing call on the same thread.
const char *fs_last_error_message(void);

// Static description of a status code.
const char *fs_status_name(int status);

// Library version as a static string.
const char *fs_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRAMESCALE_H */
