#include "dami/core/invariant.hpp"

#include <algorithm>
#include <sstream>

namespace dami {

const char* normalizer_name(NormalizerKind kind) {
    switch (kind) {
        case NormalizerKind::Mass: return "mass";
        case NormalizerKind::SpatialNorm: return "spatial second-moment determinant";
        case NormalizerKind::ChannelNorm: return "channel second-moment determinant";
    }
    return "?";
}

namespace {

Normalization make_normalization(const KernelSpec& spec, NormalizationMode mode) {
    const KernelParams kp = spec.params();
    const int M = spec.space_dim();
    const int N = spec.channel_dim();
    Normalization norm;
    norm.mode = mode;
    auto push = [&](NormalizerKind kind, MomentPolynomial base, Rational exponent) {
        if (exponent.is_zero()) return;
        norm.factors.push_back(NormalizationFactor{kind, std::move(base), exponent});
    };
    if (mode == NormalizationMode::PaperDensity) {
        // mass^(O_S + L - N*O_C/2) * channel_norm^(O_C/2)
        push(NormalizerKind::Mass, mass_polynomial(M, N),
             Rational(2 * (kp.space_order + kp.degree) - N * kp.channel_order, 2));
        push(NormalizerKind::ChannelNorm, channel_norm_polynomial(M, N),
             Rational(kp.channel_order, 2));
    } else {
        // spatial_norm^(O_S/2) * channel_norm^(O_C/2)
        //   * mass^(L - M*O_S/2 - N*O_C/2)
        push(NormalizerKind::SpatialNorm, spatial_norm_polynomial(M, N),
             Rational(kp.space_order, 2));
        push(NormalizerKind::ChannelNorm, channel_norm_polynomial(M, N),
             Rational(kp.channel_order, 2));
        push(NormalizerKind::Mass, mass_polynomial(M, N),
             Rational(2 * kp.degree - M * kp.space_order - N * kp.channel_order, 2));
    }
    return norm;
}

}  // namespace

std::optional<InvariantExpr> build_invariant(const KernelSpec& spec, NormalizationMode mode) {
    KernelSpec canonical = spec.is_canonical() ? spec : spec.canonicalize();
    MomentPolynomial numerator = expand_kernel(canonical);
    if (numerator.empty()) return std::nullopt;
    InvariantExpr expr;
    expr.kernel = std::move(canonical);
    expr.numerator = std::move(numerator);
    expr.normalization = make_normalization(expr.kernel, mode);
    return expr;
}

InvariantExpr build_invariant_or_throw(const KernelSpec& spec, NormalizationMode mode) {
    auto expr = build_invariant(spec, mode);
    if (!expr)
        fail(ErrorCode::ZeroInvariant, "kernel " + spec.str() + " expands to the zero polynomial");
    return *std::move(expr);
}

InvariantExpr renormalize(const InvariantExpr& expr, NormalizationMode mode) {
    InvariantExpr out = expr;
    out.normalization = make_normalization(expr.kernel, mode);
    return out;
}

StabilityReport stability_classify(const InvariantExpr& expr) {
    if (expr.numerator.empty())
        fail(ErrorCode::InvalidArgument, "stability classification requires a non-zero invariant");

    const KernelParams kp = expr.kernel.params();
    StabilityReport report;
    report.orders_even = kp.space_order % 2 == 0 && kp.channel_order % 2 == 0;
    report.all_even_exponent_term = expr.numerator.has_all_even_exponent_term();

    std::vector<int> space_counts, channel_counts;
    expr.kernel.participation_counts(space_counts, channel_counts);
    report.participations_even = true;
    for (int id : expr.kernel.point_ids()) {
        int s = space_counts[static_cast<std::size_t>(id)];
        int c = channel_counts[static_cast<std::size_t>(id)];
        if ((s + c) % 2) report.participations_even = false;
        if (s % 2) report.space_odd_points.push_back(id);
        if (c % 2) report.channel_odd_points.push_back(id);
        if (s % 2 && c == 0) report.space_side_violation = true;
        if (c % 2 && s == 0) report.channel_side_violation = true;
    }

    report.cls = (report.orders_even && !report.channel_side_violation)
                     ? StabilityClass::Stable
                     : StabilityClass::ConditionallyStable;

    std::ostringstream os;
    os << "O_S=" << kp.space_order << (kp.space_order % 2 ? " (odd)" : " (even)")
       << ", O_C=" << kp.channel_order << (kp.channel_order % 2 ? " (odd)" : " (even)");
    auto list = [&os](const char* label, const std::vector<int>& pts) {
        os << "; " << label << "=";
        if (pts.empty()) {
            os << "none";
            return;
        }
        for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? "," : "") << pts[i];
    };
    list("odd-space-count points", report.space_odd_points);
    list("odd-channel-count points", report.channel_odd_points);
    if (report.channel_side_violation)
        os << "; channel-side violation: a point participates only in channel primitives an odd "
              "number of times, so every addend carries an odd pure-channel moment";
    if (report.space_side_violation)
        os << "; space-side note: a point participates only in space primitives an odd number of "
              "times, so every addend carries an odd pure-spatial moment";
    os << "; all-even-exponent addend: " << (report.all_even_exponent_term ? "yes" : "no");
    report.reasons = os.str();
    return report;
}

}  // namespace dami
