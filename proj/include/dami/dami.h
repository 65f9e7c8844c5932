/*
 * C interface to the dual-affine moment invariant toolkit.
 *
 * All functions return a dami_status; results come back through out
 * parameters.  Objects, kernels and expressions are opaque handles released
 * with their matching *_free function.  Strings allocated by the library are
 * released with dami_string_free.  On failure, dami_last_error() returns a
 * thread-local human-readable detail message for the most recent call.
 */
#ifndef DAMI_H
#define DAMI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dami_status {
    DAMI_OK = 0,
    DAMI_ERR_VALIDATION = 1,
    DAMI_ERR_PARSE = 2,
    DAMI_ERR_NULLSPACE = 3,
    DAMI_ERR_NEGATIVE_BASE = 4,
    DAMI_ERR_ZERO_INVARIANT = 5,
    DAMI_ERR_BUDGET = 6,
    DAMI_ERR_IO = 7,
    DAMI_ERR_INVALID_ARGUMENT = 8,
    DAMI_ERR_INTERNAL = 9
} dami_status;

typedef struct dami_object dami_object;
typedef struct dami_kernel dami_kernel;
typedef struct dami_expr dami_expr;
typedef struct dami_kernel_list dami_kernel_list;

typedef enum dami_norm_mode {
    DAMI_NORM_COUNTING = 0, /* exact invariance on weighted point sets */
    DAMI_NORM_PAPER = 1     /* density convention: mass and channel normalizer only */
} dami_norm_mode;

typedef enum dami_affine_family {
    DAMI_FAMILY_TRANSLATION = 0,
    DAMI_FAMILY_ROTATION = 1,
    DAMI_FAMILY_SCALING = 2,
    DAMI_FAMILY_GENERAL = 3
} dami_affine_family;

const char* dami_version(void);
const char* dami_status_name(dami_status status);
const char* dami_last_error(void);
void dami_string_free(char* s);

/* ---- objects -------------------------------------------------------- */

/* coords: npoints*space_dim row-major; channels: npoints*channel_dim;
 * weights: npoints or NULL for unit weights. */
dami_status dami_object_create(int space_dim, int channel_dim, int64_t npoints,
                               const double* coords, const double* channels,
                               const double* weights, dami_object** out);
dami_status dami_object_read_csv(const char* path, int space_dim, int channel_dim,
                                 dami_object** out);
dami_status dami_object_write_csv(const dami_object* obj, const char* path,
                                  const char* header_comment);
dami_status dami_object_synth(int space_dim, int channel_dim, int64_t npoints, uint64_t seed,
                              dami_object** out);
int dami_object_space_dim(const dami_object* obj);
int dami_object_channel_dim(const dami_object* obj);
int64_t dami_object_point_count(const dami_object* obj);
dami_status dami_object_transform(const dami_object* obj, const double* spatial_linear,
                                  const double* spatial_offset, const double* channel_linear,
                                  const double* channel_offset, dami_object** out);
/* Projects spatial/channel data onto the principal directions whose
 * eigenvalue exceeds tolerance times the largest one; report_json (optional)
 * receives ranks and eigenvalues. */
dami_status dami_object_rank_reduce(const dami_object* obj, double tolerance, dami_object** out,
                                    char** report_json);
void dami_object_free(dami_object* obj);

/* ---- affine sampling ------------------------------------------------- */

/* Deterministic for (dim, family, seed); linear_out is dim*dim row-major,
 * offset_out is dim.  General maps satisfy |det| in [0.2,5], cond <= 10,
 * positive determinant unless allow_reflection. */
dami_status dami_affine_sample(int dim, dami_affine_family family, uint64_t seed,
                               int allow_reflection, double* linear_out, double* offset_out);

/* ---- kernels and expressions ----------------------------------------- */

/* Grammar: S(1,2,3)^2*C(1,2,3) — kind, comma-separated point ids,
 * optional ^exponent, '*'-joined. */
dami_status dami_kernel_parse(const char* text, int space_dim, int channel_dim,
                              dami_kernel** out);
dami_status dami_kernel_canonical_string(const dami_kernel* kernel, char** out);
dami_status dami_kernel_params(const dami_kernel* kernel, int* space_points, int* channel_points,
                               int* space_order, int* channel_order, int* degree, int* order);
void dami_kernel_free(dami_kernel* kernel);

/* Expands to the invariant expression; DAMI_ERR_ZERO_INVARIANT when the
 * kernel integrates to zero identically. */
dami_status dami_kernel_expand(const dami_kernel* kernel, dami_norm_mode mode, dami_expr** out);
dami_status dami_expr_to_json(const dami_expr* expr, char** out);
dami_status dami_expr_from_json(const char* json_text, dami_expr** out);
/* Human-readable "numerator / denominator" rendering. */
dami_status dami_expr_format(const dami_expr* expr, char** out);
dami_status dami_expr_renormalize(const dami_expr* expr, dami_norm_mode mode, dami_expr** out);
/* stable_out: 1 = stable, 0 = conditionally stable; reasons_json (optional)
 * carries the parity flags behind the call. */
dami_status dami_expr_stability(const dami_expr* expr, int* stable_out, char** reasons_json);
dami_status dami_expr_term_count(const dami_expr* expr, int64_t* out);
dami_status dami_expr_dims(const dami_expr* expr, int* space_dim, int* channel_dim);
dami_status dami_expr_kernel_string(const dami_expr* expr, char** out);
void dami_expr_free(dami_expr* expr);

/* ---- enumeration ------------------------------------------------------ */

dami_status dami_enumerate(int space_dim, int channel_dim, int max_degree, int max_order,
                           int require_dual, dami_kernel_list** out);
int64_t dami_kernel_list_count(const dami_kernel_list* list);
dami_status dami_kernel_list_get(const dami_kernel_list* list, int64_t index, dami_kernel** out);
void dami_kernel_list_free(dami_kernel_list* list);

/* ---- evaluation ------------------------------------------------------- */

dami_status dami_evaluate(const dami_expr* expr, const dami_object* obj, double* value_out);
/* Numerator on the object's central moments, no normalization. */
dami_status dami_covariant_value(const dami_kernel* kernel, const dami_object* obj,
                                 double* value_out);
/* Direct L-fold tuple sum over the centered object: the reference the
 * symbolic path is validated against.  scale_out receives the summed
 * absolute contribution magnitude. */
dami_status dami_oracle_covariant(const dami_kernel* kernel, const dami_object* obj,
                                  double tuple_budget, int allow_sampling, uint64_t sample_seed,
                                  double* value_out, double* scale_out, int* approximate_out);
/* features_out: n_objects x n_exprs row-major, caller-allocated; cells that
 * fail (null space) are NaN.  status_out (optional, same layout): 0 ok,
 * 3 null space, 4 negative base. */
dami_status dami_evaluate_batch(const dami_expr* const* exprs, int64_t n_exprs,
                                const dami_object* const* objects, int64_t n_objects,
                                double* features_out, int* status_out);

/* ---- analysis --------------------------------------------------------- */

/* CSV with one row per expression and one coefficient-of-variation column
 * per transform family (translation, rotation, scaling, affine,
 * channel-affine, dual) plus an ALL column. */
dami_status dami_invariance_report(const dami_object* obj, const dami_expr* const* exprs,
                                   const char* const* names, int64_t n_exprs, int trials,
                                   uint64_t seed, char** csv_out);
/* features: rows x cols row-major; labels: rows.  JSON report with per-fold
 * and mean accuracy. */
dami_status dami_knn_crossval(const double* features, int64_t rows, int64_t cols,
                              const int* labels, int neighbors, int folds, uint64_t seed,
                              char** report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DAMI_H */
