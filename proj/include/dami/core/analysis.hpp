#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dami/core/eval.hpp"
#include "dami/core/invariant.hpp"
#include "dami/core/object.hpp"

namespace dami {

/// Coefficient of variation: population standard deviation over |mean|.
/// All-equal inputs give exactly 0 (including all-zero).  Otherwise a mean
/// smaller than 1e-300 in magnitude yields +infinity as the distinguished
/// "mean is numerically zero" marker.  Requires at least two values.
double coefficient_of_variation(const std::vector<double>& values);

enum class TransformFamily { Translation, Rotation, Scaling, SpatialAffine, ChannelAffine, Dual };

const char* transform_family_name(TransformFamily family);

std::vector<TransformFamily> all_transform_families();

struct InvarianceOptions {
    int trials = 10;
    std::uint64_t seed = 1;
    EvalOptions eval;
};

struct InvarianceReport {
    std::vector<std::string> row_names;     // one per expression
    std::vector<TransformFamily> families;  // column order
    /// cv[row][col]; the extra last column aggregates every value observed
    /// across all families ("ALL").  NaN marks cells where fewer than two
    /// values survived evaluation.
    std::vector<std::vector<double>> cv;

    std::string to_csv(const std::string& header_comment = {}) const;
};

/// For each family, evaluates every expression on the original object plus
/// `trials` transformed variants and reports the CV per (expression,
/// family).  Pure function of (object, expressions, seed).
InvarianceReport invariance_report(const ObjectMN& obj, const std::vector<InvariantExpr>& exprs,
                                   const std::vector<std::string>& names,
                                   const InvarianceOptions& options = {});

struct KnnOptions {
    int neighbors = 1;
    int folds = 10;
    std::uint64_t seed = 1;
    /// Standardize each feature on the training fold before distances;
    /// invariant magnitudes span decades, so raw distances would be
    /// dominated by a single column.
    bool zscore = true;
};

struct KnnReport {
    std::vector<double> fold_accuracy;
    double mean_accuracy = 0.0;
    bool stratified = true;
    std::vector<std::size_t> dropped_columns;  // non-finite features
    std::vector<std::string> warnings;
};

/// k-nearest-neighbor accuracy under k-fold cross-validation with stratified
/// fold assignment (degrades to unstratified, with a warning, when a class
/// has fewer members than folds).
KnnReport knn_crossval(const FeatureMatrix& features, const std::vector<int>& labels,
                       const KnnOptions& options = {});

}  // namespace dami
