#pragma once

#include <string>
#include <vector>

#include "dami/core/invariant.hpp"
#include "dami/core/moments.hpp"
#include "dami/core/object.hpp"

namespace dami {

struct EvalOptions {
    MomentOptions moments;
    /// A normalization base whose |value| falls at or below
    /// null_tolerance * (sum of its terms' absolute magnitudes) is treated
    /// as vanished and reported as NullSpace.
    double null_tolerance = 1e-12;
};

/// Every moment key the expression reads (numerator plus normalizer bases).
std::vector<MomentKey> required_keys(const InvariantExpr& expr);

/// Numerator value only (no normalization); used for oracle comparisons.
double evaluate_numerator(const InvariantExpr& expr, const MomentTable& table);

/// Full invariant value on a precomputed table.  Throws NullSpace naming the
/// vanished base, or NegativeBase when a fractional power meets a negative
/// base (only reachable through numerical degeneracy: the normalizer bases
/// are Gram determinants).
double evaluate_on_table(const InvariantExpr& expr, const MomentTable& table,
                         const EvalOptions& options = {});

double evaluate(const InvariantExpr& expr, const ObjectMN& obj, const EvalOptions& options = {});

enum class CellStatus { Ok, NullSpace, NegativeBase };

struct FeatureMatrix {
    std::size_t rows = 0;  // objects
    std::size_t cols = 0;  // expressions
    std::vector<double> values;      // NaN where status != Ok
    std::vector<CellStatus> status;

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    CellStatus status_at(std::size_t r, std::size_t c) const { return status[r * cols + c]; }
};

/// Evaluates all expressions on all objects, sharing one moment table per
/// object (union of required keys).  Per-cell failures are recorded, not
/// thrown.
FeatureMatrix evaluate_batch(const std::vector<InvariantExpr>& exprs,
                             const std::vector<ObjectMN>& objects,
                             const EvalOptions& options = {});

}  // namespace dami
