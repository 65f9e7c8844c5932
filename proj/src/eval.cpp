#include "dami/core/eval.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "dami/core/linalg.hpp"

namespace dami {

std::vector<MomentKey> required_keys(const InvariantExpr& expr) {
    std::set<MomentKey> keys;
    for (const auto& k : expr.numerator.keys()) keys.insert(k);
    for (const auto& f : expr.normalization.factors)
        for (const auto& k : f.base.keys()) keys.insert(k);
    return {keys.begin(), keys.end()};
}

namespace {

double poly_value(const MomentPolynomial& poly, const MomentTable& table, bool absolute) {
    KahanSum sum;
    for (const auto& term : poly.terms()) {
        double t = term.coeff.to_double();
        if (absolute) t = std::abs(t);
        for (const auto& k : term.factors) {
            auto it = table.find(k);
            if (it == table.end()) fail(ErrorCode::Internal, "moment table is missing " + k.label());
            t *= absolute ? std::abs(it->second) : it->second;
        }
        sum.add(t);
    }
    return sum.value();
}

}  // namespace

double evaluate_numerator(const InvariantExpr& expr, const MomentTable& table) {
    return poly_value(expr.numerator, table, false);
}

double evaluate_on_table(const InvariantExpr& expr, const MomentTable& table,
                         const EvalOptions& options) {
    double numerator = poly_value(expr.numerator, table, false);

    double log_den = 0.0;
    double sign = 1.0;
    for (const auto& f : expr.normalization.factors) {
        double base = poly_value(f.base, table, false);
        double magnitude = poly_value(f.base, table, true);
        if (std::abs(base) <= options.null_tolerance * magnitude || magnitude == 0.0)
            fail(ErrorCode::NullSpace,
                 std::string("normalization base '") + normalizer_name(f.kind) +
                     "' vanished (value " + std::to_string(base) + ")");
        if (base < 0.0) {
            if (!f.exponent.is_integer())
                fail(ErrorCode::NegativeBase,
                     std::string("fractional power of negative base '") + normalizer_name(f.kind) + "'");
            if (f.exponent.num() % 2 != 0) sign = -sign;
        }
        log_den += f.exponent.to_double() * std::log(std::abs(base));
    }
    double value = numerator == 0.0 ? 0.0 : sign * numerator * std::exp(-log_den);
    if (!std::isfinite(value))
        fail(ErrorCode::NullSpace, "invariant evaluation overflowed; normalizer too small");
    return value;
}

double evaluate(const InvariantExpr& expr, const ObjectMN& obj, const EvalOptions& options) {
    if (expr.kernel.space_dim() != obj.space_dim() || expr.kernel.channel_dim() != obj.channel_dim())
        fail(ErrorCode::Validation, "expression dimensions do not match the object");
    MomentTable table = central_moments(obj, required_keys(expr), options.moments);
    return evaluate_on_table(expr, table, options);
}

FeatureMatrix evaluate_batch(const std::vector<InvariantExpr>& exprs,
                             const std::vector<ObjectMN>& objects, const EvalOptions& options) {
    FeatureMatrix out;
    out.rows = objects.size();
    out.cols = exprs.size();
    out.values.assign(out.rows * out.cols, std::numeric_limits<double>::quiet_NaN());
    out.status.assign(out.rows * out.cols, CellStatus::Ok);

    for (std::size_t r = 0; r < objects.size(); ++r) {
        std::set<MomentKey> keys;
        for (const auto& e : exprs) {
            if (e.kernel.space_dim() != objects[r].space_dim() ||
                e.kernel.channel_dim() != objects[r].channel_dim())
                fail(ErrorCode::Validation, "expression dimensions do not match object " + std::to_string(r));
            for (const auto& k : required_keys(e)) keys.insert(k);
        }
        MomentTable table =
            central_moments(objects[r], {keys.begin(), keys.end()}, options.moments);
        for (std::size_t c = 0; c < exprs.size(); ++c) {
            try {
                out.values[r * out.cols + c] = evaluate_on_table(exprs[c], table, options);
            } catch (const Error& err) {
                out.status[r * out.cols + c] = err.code() == ErrorCode::NegativeBase
                                                   ? CellStatus::NegativeBase
                                                   : CellStatus::NullSpace;
            }
        }
    }
    return out;
}

}  // namespace dami
