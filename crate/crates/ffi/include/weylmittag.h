#ifndef WEYLMITTAG_H
#define WEYLMITTAG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WmStatus {
  WM_STATUS_OK = 0,
  WM_STATUS_NULL_POINTER = 1,
  WM_STATUS_INVALID_ARGUMENT = 2,
  WM_STATUS_RANK_CAP = 3,
  WM_STATUS_VERIFICATION = 4,
  // A rational result does not fit in 64-bit integers.
  WM_STATUS_OVERFLOW = 5,
  WM_STATUS_PANIC = 6,
} WmStatus;

// A verified character decomposition.
typedef struct WmDecomposition WmDecomposition;

// A root system of rank at most the default Weyl group cap.
typedef struct WmRootSystem WmRootSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Description of the last failure on this thread, or an empty string. The
// pointer stays valid until the next call into this library on the same thread.
const char *wm_last_error_message(void);

// Builds a root system from a type string such as `"A2"` or `"G2"`.
//
// # Safety
// `type_name` must be a NUL-terminated string and `out` a valid pointer.
enum WmStatus wm_root_system_new(const char *type_name, struct WmRootSystem **out);

// # Safety
// `rs` must come from [`wm_root_system_new`] and not be used afterwards. Null is ignored.
void wm_root_system_free(struct WmRootSystem *rs);

// # Safety
// `rs` must be a live handle and `out` a valid pointer.
enum WmStatus wm_root_system_rank(const struct WmRootSystem *rs, size_t *out);

// Decomposes `F_{k,xi}` into irreducible characters. `class_m` is a
// comma-separated m-vector such as `"1/3,2/3"`; null or `"trivial"` selects
// the trivial class.
//
// # Safety
// `rs` must be a live handle, `class_m` null or NUL-terminated, `out` valid.
enum WmStatus wm_decompose(const struct WmRootSystem *rs,
                           uint32_t k,
                           const char *class_m,
                           struct WmDecomposition **out);

// # Safety
// `dec` must come from [`wm_decompose`] and not be used afterwards. Null is ignored.
void wm_decomposition_free(struct WmDecomposition *dec);

// Number of irreducible characters with nonzero multiplicity.
//
// # Safety
// `dec` must be a live handle and `out` a valid pointer.
enum WmStatus wm_decomposition_len(const struct WmDecomposition *dec, size_t *out);

// Term `index` in canonical order: the highest weight (`rank` entries written
// to `lambda`) and the multiplicity `num / den` in lowest terms.
//
// # Safety
// `dec` must be a live handle, `lambda` must hold `lambda_len` entries, and
// `num`, `den` must be valid pointers.
enum WmStatus wm_decomposition_term(const struct WmDecomposition *dec,
                                    size_t index,
                                    int64_t *lambda,
                                    size_t lambda_len,
                                    int64_t *num,
                                    int64_t *den);

// The dominance-maximal highest weight.
//
// # Safety
// `dec` must be a live handle and `lambda` must hold `lambda_len` entries.
enum WmStatus wm_decomposition_leading(const struct WmDecomposition *dec,
                                       int64_t *lambda,
                                       size_t lambda_len);

// JSON form of the decomposition, identical to `weylmittag decompose`. The
// string is owned by `dec`. Returns null if `dec` is null.
//
// # Safety
// `dec` must be null or a live handle.
const char *wm_decomposition_json(const struct WmDecomposition *dec);

// Exact density of the `k`-fold box spline of positive roots at the weight
// with coordinates `t_num[i] / t_den[i]` (fundamental-weight basis).
//
// # Safety
// `rs` must be a live handle, `t_num` and `t_den` must hold `len` entries,
// `out_num` and `out_den` must be valid pointers.
enum WmStatus wm_boxspline_eval(const struct WmRootSystem *rs,
                                uint32_t k,
                                const int64_t *t_num,
                                const int64_t *t_den,
                                size_t len,
                                int64_t *out_num,
                                int64_t *out_den);

// Truncated lattice sum `F_{k,xi}(x)` with `x` in coroot coordinates and
// cutoff `radius` on coroot coordinates of the lattice points.
//
// # Safety
// `rs` must be a live handle, `class_m` null or NUL-terminated, `x` must hold
// `len` entries, `out_re` and `out_im` must be valid pointers.
enum WmStatus wm_lattice_sum(const struct WmRootSystem *rs,
                             uint32_t k,
                             const char *class_m,
                             const double *x,
                             size_t len,
                             uint64_t radius,
                             double *out_re,
                             double *out_im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEYLMITTAG_H */
