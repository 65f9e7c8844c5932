#include "dami/dami.h"

#include <cstring>
#include <sstream>
#include <string>

#include "dami/core/analysis.hpp"
#include "dami/core/enumerate.hpp"
#include "dami/core/eval.hpp"
#include "dami/core/invariant.hpp"
#include "dami/core/io.hpp"
#include "dami/core/moments.hpp"
#include "dami/core/oracle.hpp"
#include "dami/core/synth.hpp"
#include "dami/core/transform.hpp"
#include "dami/core/version.hpp"
#include "json.hpp"

using nlohmann::json;

struct dami_object {
    dami::ObjectMN value;
};
struct dami_kernel {
    dami::KernelSpec value;
};
struct dami_expr {
    dami::InvariantExpr value;
};
struct dami_kernel_list {
    std::vector<dami::KernelSpec> value;
};

namespace {

thread_local std::string g_last_error;

dami_status status_from(dami::ErrorCode code) {
    using dami::ErrorCode;
    switch (code) {
        case ErrorCode::Validation: return DAMI_ERR_VALIDATION;
        case ErrorCode::Parse: return DAMI_ERR_PARSE;
        case ErrorCode::NullSpace: return DAMI_ERR_NULLSPACE;
        case ErrorCode::NegativeBase: return DAMI_ERR_NEGATIVE_BASE;
        case ErrorCode::ZeroInvariant: return DAMI_ERR_ZERO_INVARIANT;
        case ErrorCode::Budget: return DAMI_ERR_BUDGET;
        case ErrorCode::Io: return DAMI_ERR_IO;
        case ErrorCode::InvalidArgument: return DAMI_ERR_INVALID_ARGUMENT;
        case ErrorCode::Internal: return DAMI_ERR_INTERNAL;
    }
    return DAMI_ERR_INTERNAL;
}

template <typename Fn>
dami_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return DAMI_OK;
    } catch (const dami::Error& e) {
        g_last_error = e.what();
        return status_from(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DAMI_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

dami_status require(bool ok, const char* message) {
    if (ok) return DAMI_OK;
    g_last_error = message;
    return DAMI_ERR_INVALID_ARGUMENT;
}

dami::NormalizationMode mode_from(dami_norm_mode mode) {
    return mode == DAMI_NORM_PAPER ? dami::NormalizationMode::PaperDensity
                                   : dami::NormalizationMode::CountingFull;
}

}  // namespace

extern "C" {

const char* dami_version(void) { return dami::kVersion; }

const char* dami_status_name(dami_status status) {
    switch (status) {
        case DAMI_OK: return "ok";
        case DAMI_ERR_VALIDATION: return "validation";
        case DAMI_ERR_PARSE: return "parse";
        case DAMI_ERR_NULLSPACE: return "null-space";
        case DAMI_ERR_NEGATIVE_BASE: return "negative-base";
        case DAMI_ERR_ZERO_INVARIANT: return "zero-invariant";
        case DAMI_ERR_BUDGET: return "budget";
        case DAMI_ERR_IO: return "io";
        case DAMI_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case DAMI_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* dami_last_error(void) { return g_last_error.c_str(); }

void dami_string_free(char* s) { delete[] s; }

/* ---- objects ---------------------------------------------------------- */

dami_status dami_object_create(int space_dim, int channel_dim, int64_t npoints,
                               const double* coords, const double* channels,
                               const double* weights, dami_object** out) {
    if (auto s = require(out && coords && channels && npoints > 0, "bad arguments")) return s;
    return guarded([&] {
        std::vector<double> c(coords, coords + npoints * space_dim);
        std::vector<double> ch(channels, channels + npoints * channel_dim);
        std::vector<double> w;
        if (weights) w.assign(weights, weights + npoints);
        *out = new dami_object{dami::ObjectMN(space_dim, channel_dim, std::move(c), std::move(ch), std::move(w))};
    });
}

dami_status dami_object_read_csv(const char* path, int space_dim, int channel_dim,
                                 dami_object** out) {
    if (auto s = require(out && path, "bad arguments")) return s;
    return guarded([&] { *out = new dami_object{dami::read_object_csv(path, space_dim, channel_dim)}; });
}

dami_status dami_object_write_csv(const dami_object* obj, const char* path,
                                  const char* header_comment) {
    if (auto s = require(obj && path, "bad arguments")) return s;
    return guarded([&] {
        dami::write_object_csv(obj->value, path, header_comment ? header_comment : "");
    });
}

dami_status dami_object_synth(int space_dim, int channel_dim, int64_t npoints, uint64_t seed,
                              dami_object** out) {
    if (auto s = require(out && npoints > 0, "bad arguments")) return s;
    return guarded([&] {
        *out = new dami_object{dami::synth_object(space_dim, channel_dim,
                                                  static_cast<std::size_t>(npoints), seed)};
    });
}

int dami_object_space_dim(const dami_object* obj) { return obj ? obj->value.space_dim() : 0; }
int dami_object_channel_dim(const dami_object* obj) { return obj ? obj->value.channel_dim() : 0; }
int64_t dami_object_point_count(const dami_object* obj) {
    return obj ? static_cast<int64_t>(obj->value.point_count()) : 0;
}

dami_status dami_object_transform(const dami_object* obj, const double* spatial_linear,
                                  const double* spatial_offset, const double* channel_linear,
                                  const double* channel_offset, dami_object** out) {
    if (auto s = require(obj && out, "bad arguments")) return s;
    return guarded([&] {
        int M = obj->value.space_dim(), N = obj->value.channel_dim();
        dami::AffineMap sp = dami::AffineMap::identity(M);
        dami::AffineMap ch = dami::AffineMap::identity(N);
        if (spatial_linear) sp.linear.assign(spatial_linear, spatial_linear + M * M);
        if (spatial_offset) sp.offset.assign(spatial_offset, spatial_offset + M);
        if (channel_linear) ch.linear.assign(channel_linear, channel_linear + N * N);
        if (channel_offset) ch.offset.assign(channel_offset, channel_offset + N);
        *out = new dami_object{dami::apply_dual(obj->value, sp, ch)};
    });
}

dami_status dami_object_rank_reduce(const dami_object* obj, double tolerance, dami_object** out,
                                    char** report_json) {
    if (auto s = require(obj && out, "bad arguments")) return s;
    return guarded([&] {
        auto result = dami::rank_reduce(obj->value, tolerance > 0 ? tolerance : 1e-9);
        if (report_json) {
            json j{{"spatial_rank", result.report.spatial_rank},
                   {"channel_rank", result.report.channel_rank},
                   {"spatial_reduced", result.report.spatial_reduced},
                   {"channel_reduced", result.report.channel_reduced},
                   {"spatial_eigenvalues", result.report.spatial_eigenvalues},
                   {"channel_eigenvalues", result.report.channel_eigenvalues}};
            *report_json = dup_string(j.dump(2));
        }
        *out = new dami_object{std::move(result.object)};
    });
}

void dami_object_free(dami_object* obj) { delete obj; }

/* ---- affine sampling --------------------------------------------------- */

dami_status dami_affine_sample(int dim, dami_affine_family family, uint64_t seed,
                               int allow_reflection, double* linear_out, double* offset_out) {
    if (auto s = require(linear_out && offset_out && dim >= 1, "bad arguments")) return s;
    return guarded([&] {
        dami::AffineFamily f;
        switch (family) {
            case DAMI_FAMILY_TRANSLATION: f = dami::AffineFamily::Translation; break;
            case DAMI_FAMILY_ROTATION: f = dami::AffineFamily::Rotation; break;
            case DAMI_FAMILY_SCALING: f = dami::AffineFamily::Scaling; break;
            default: f = dami::AffineFamily::GeneralAffine; break;
        }
        dami::SampleConstraints constraints;
        constraints.allow_reflection = allow_reflection != 0;
        auto map = dami::sample_affine(dim, seed, f, constraints);
        std::memcpy(linear_out, map.linear.data(), sizeof(double) * map.linear.size());
        std::memcpy(offset_out, map.offset.data(), sizeof(double) * map.offset.size());
    });
}

/* ---- kernels & expressions --------------------------------------------- */

dami_status dami_kernel_parse(const char* text, int space_dim, int channel_dim,
                              dami_kernel** out) {
    if (auto s = require(text && out, "bad arguments")) return s;
    return guarded([&] {
        *out = new dami_kernel{dami::KernelSpec::parse(text, space_dim, channel_dim).canonicalize()};
    });
}

dami_status dami_kernel_canonical_string(const dami_kernel* kernel, char** out) {
    if (auto s = require(kernel && out, "bad arguments")) return s;
    return guarded([&] { *out = dup_string(kernel->value.str()); });
}

dami_status dami_kernel_params(const dami_kernel* kernel, int* space_points, int* channel_points,
                               int* space_order, int* channel_order, int* degree, int* order) {
    if (auto s = require(kernel != nullptr, "bad arguments")) return s;
    return guarded([&] {
        auto p = kernel->value.params();
        if (space_points) *space_points = p.space_points;
        if (channel_points) *channel_points = p.channel_points;
        if (space_order) *space_order = p.space_order;
        if (channel_order) *channel_order = p.channel_order;
        if (degree) *degree = p.degree;
        if (order) *order = p.order;
    });
}

void dami_kernel_free(dami_kernel* kernel) { delete kernel; }

dami_status dami_kernel_expand(const dami_kernel* kernel, dami_norm_mode mode, dami_expr** out) {
    if (auto s = require(kernel && out, "bad arguments")) return s;
    return guarded([&] {
        *out = new dami_expr{dami::build_invariant_or_throw(kernel->value, mode_from(mode))};
    });
}

dami_status dami_expr_to_json(const dami_expr* expr, char** out) {
    if (auto s = require(expr && out, "bad arguments")) return s;
    return guarded([&] { *out = dup_string(dami::expr_to_json(expr->value)); });
}

dami_status dami_expr_from_json(const char* json_text, dami_expr** out) {
    if (auto s = require(json_text && out, "bad arguments")) return s;
    return guarded([&] { *out = new dami_expr{dami::expr_from_json(json_text)}; });
}

dami_status dami_expr_format(const dami_expr* expr, char** out) {
    if (auto s = require(expr && out, "bad arguments")) return s;
    return guarded([&] {
        std::ostringstream os;
        os << "kernel: " << expr->value.kernel.str() << "\n";
        os << "numerator: " << expr->value.numerator.str() << "\n";
        os << "denominator:";
        if (expr->value.normalization.factors.empty()) os << " 1";
        for (const auto& f : expr->value.normalization.factors)
            os << " (" << f.base.str() << ")^(" << f.exponent.str() << ")";
        os << "\n";
        *out = dup_string(os.str());
    });
}

dami_status dami_expr_renormalize(const dami_expr* expr, dami_norm_mode mode, dami_expr** out) {
    if (auto s = require(expr && out, "bad arguments")) return s;
    return guarded([&] { *out = new dami_expr{dami::renormalize(expr->value, mode_from(mode))}; });
}

dami_status dami_expr_stability(const dami_expr* expr, int* stable_out, char** reasons_json) {
    if (auto s = require(expr && stable_out, "bad arguments")) return s;
    return guarded([&] {
        auto rep = dami::stability_classify(expr->value);
        *stable_out = rep.cls == dami::StabilityClass::Stable ? 1 : 0;
        if (reasons_json) {
            json j{{"stable", rep.cls == dami::StabilityClass::Stable},
                   {"orders_even", rep.orders_even},
                   {"participations_even", rep.participations_even},
                   {"all_even_exponent_term", rep.all_even_exponent_term},
                   {"space_side_violation", rep.space_side_violation},
                   {"channel_side_violation", rep.channel_side_violation},
                   {"space_odd_points", rep.space_odd_points},
                   {"channel_odd_points", rep.channel_odd_points},
                   {"reasons", rep.reasons}};
            *reasons_json = dup_string(j.dump(2));
        }
    });
}

dami_status dami_expr_term_count(const dami_expr* expr, int64_t* out) {
    if (auto s = require(expr && out, "bad arguments")) return s;
    *out = static_cast<int64_t>(expr->value.numerator.term_count());
    return DAMI_OK;
}

dami_status dami_expr_dims(const dami_expr* expr, int* space_dim, int* channel_dim) {
    if (auto s = require(expr != nullptr, "bad arguments")) return s;
    if (space_dim) *space_dim = expr->value.kernel.space_dim();
    if (channel_dim) *channel_dim = expr->value.kernel.channel_dim();
    return DAMI_OK;
}

dami_status dami_expr_kernel_string(const dami_expr* expr, char** out) {
    if (auto s = require(expr && out, "bad arguments")) return s;
    return guarded([&] { *out = dup_string(expr->value.kernel.str()); });
}

void dami_expr_free(dami_expr* expr) { delete expr; }

/* ---- enumeration -------------------------------------------------------- */

dami_status dami_enumerate(int space_dim, int channel_dim, int max_degree, int max_order,
                           int require_dual, dami_kernel_list** out) {
    if (auto s = require(out != nullptr, "bad arguments")) return s;
    return guarded([&] {
        dami::EnumerateOptions options;
        options.max_degree = max_degree;
        options.max_order = max_order;
        options.require_dual = require_dual != 0;
        *out = new dami_kernel_list{dami::enumerate_kernels(space_dim, channel_dim, options)};
    });
}

int64_t dami_kernel_list_count(const dami_kernel_list* list) {
    return list ? static_cast<int64_t>(list->value.size()) : 0;
}

dami_status dami_kernel_list_get(const dami_kernel_list* list, int64_t index, dami_kernel** out) {
    if (auto s = require(list && out && index >= 0 &&
                             index < static_cast<int64_t>(list->value.size()),
                         "index out of range"))
        return s;
    return guarded([&] { *out = new dami_kernel{list->value[static_cast<std::size_t>(index)]}; });
}

void dami_kernel_list_free(dami_kernel_list* list) { delete list; }

/* ---- evaluation ---------------------------------------------------------- */

dami_status dami_evaluate(const dami_expr* expr, const dami_object* obj, double* value_out) {
    if (auto s = require(expr && obj && value_out, "bad arguments")) return s;
    return guarded([&] { *value_out = dami::evaluate(expr->value, obj->value); });
}

dami_status dami_covariant_value(const dami_kernel* kernel, const dami_object* obj,
                                 double* value_out) {
    if (auto s = require(kernel && obj && value_out, "bad arguments")) return s;
    return guarded([&] {
        auto expr = dami::build_invariant(kernel->value, dami::NormalizationMode::CountingFull);
        if (!expr) {
            *value_out = 0.0;  // zero polynomial evaluates to zero
            return;
        }
        auto table = dami::central_moments(obj->value, dami::required_keys(*expr));
        *value_out = dami::evaluate_numerator(*expr, table);
    });
}

dami_status dami_oracle_covariant(const dami_kernel* kernel, const dami_object* obj,
                                  double tuple_budget, int allow_sampling, uint64_t sample_seed,
                                  double* value_out, double* scale_out, int* approximate_out) {
    if (auto s = require(kernel && obj && value_out, "bad arguments")) return s;
    return guarded([&] {
        dami::OracleOptions options;
        if (tuple_budget > 0) options.tuple_budget = tuple_budget;
        options.allow_sampling = allow_sampling != 0;
        options.sample_seed = sample_seed;
        auto result = dami::brute_covariant(obj->value, kernel->value, options);
        *value_out = result.value;
        if (scale_out) *scale_out = result.magnitude_scale;
        if (approximate_out) *approximate_out = result.approximate ? 1 : 0;
    });
}

dami_status dami_evaluate_batch(const dami_expr* const* exprs, int64_t n_exprs,
                                const dami_object* const* objects, int64_t n_objects,
                                double* features_out, int* status_out) {
    if (auto s = require(exprs && objects && features_out && n_exprs > 0 && n_objects > 0,
                         "bad arguments"))
        return s;
    return guarded([&] {
        std::vector<dami::InvariantExpr> es;
        es.reserve(static_cast<std::size_t>(n_exprs));
        for (int64_t i = 0; i < n_exprs; ++i) es.push_back(exprs[i]->value);
        std::vector<dami::ObjectMN> os;
        os.reserve(static_cast<std::size_t>(n_objects));
        for (int64_t i = 0; i < n_objects; ++i) os.push_back(objects[i]->value);
        auto matrix = dami::evaluate_batch(es, os);
        std::memcpy(features_out, matrix.values.data(), sizeof(double) * matrix.values.size());
        if (status_out)
            for (std::size_t i = 0; i < matrix.status.size(); ++i)
                status_out[i] = matrix.status[i] == dami::CellStatus::Ok
                                    ? 0
                                    : (matrix.status[i] == dami::CellStatus::NullSpace
                                           ? DAMI_ERR_NULLSPACE
                                           : DAMI_ERR_NEGATIVE_BASE);
    });
}

/* ---- analysis -------------------------------------------------------------- */

dami_status dami_invariance_report(const dami_object* obj, const dami_expr* const* exprs,
                                   const char* const* names, int64_t n_exprs, int trials,
                                   uint64_t seed, char** csv_out) {
    if (auto s = require(obj && exprs && names && csv_out && n_exprs > 0 && trials > 0,
                         "bad arguments"))
        return s;
    return guarded([&] {
        std::vector<dami::InvariantExpr> es;
        std::vector<std::string> ns;
        for (int64_t i = 0; i < n_exprs; ++i) {
            es.push_back(exprs[i]->value);
            ns.emplace_back(names[i]);
        }
        dami::InvarianceOptions options;
        options.trials = trials;
        options.seed = seed;
        auto report = dami::invariance_report(obj->value, es, ns, options);
        *csv_out = dup_string(report.to_csv());
    });
}

dami_status dami_knn_crossval(const double* features, int64_t rows, int64_t cols,
                              const int* labels, int neighbors, int folds, uint64_t seed,
                              char** report_json) {
    if (auto s = require(features && labels && report_json && rows > 0 && cols > 0,
                         "bad arguments"))
        return s;
    return guarded([&] {
        dami::FeatureMatrix matrix;
        matrix.rows = static_cast<std::size_t>(rows);
        matrix.cols = static_cast<std::size_t>(cols);
        matrix.values.assign(features, features + rows * cols);
        matrix.status.assign(static_cast<std::size_t>(rows * cols), dami::CellStatus::Ok);
        std::vector<int> ls(labels, labels + rows);
        dami::KnnOptions options;
        options.neighbors = neighbors;
        options.folds = folds;
        options.seed = seed;
        auto report = dami::knn_crossval(matrix, ls, options);
        json j{{"fold_accuracy", report.fold_accuracy},
               {"mean_accuracy", report.mean_accuracy},
               {"stratified", report.stratified},
               {"dropped_columns", report.dropped_columns},
               {"warnings", report.warnings}};
        *report_json = dup_string(j.dump(2));
    });
}

} /* extern "C" */
