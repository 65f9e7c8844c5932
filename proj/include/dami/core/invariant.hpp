#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dami/core/expand.hpp"
#include "dami/core/kernel.hpp"
#include "dami/core/poly.hpp"

namespace dami {

/// How the covariant is normalized into an invariant.
///
/// PaperDensity treats the object as a density: mass raised to
/// O_S + L - N*O_C/2 times the channel normalizer raised to O_C/2.
/// CountingFull treats the object as a weighted point set (no Jacobian
/// appears when transforming point samples), so the spatial determinant
/// must be cancelled explicitly: spatial normalizer^(O_S/2) *
/// channel normalizer^(O_C/2) * mass^(L - M*O_S/2 - N*O_C/2).
enum class NormalizationMode { CountingFull, PaperDensity };

enum class NormalizerKind { Mass, SpatialNorm, ChannelNorm };

struct NormalizationFactor {
    NormalizerKind kind = NormalizerKind::Mass;
    MomentPolynomial base;
    Rational exponent;
};

const char* normalizer_name(NormalizerKind kind);

struct Normalization {
    NormalizationMode mode = NormalizationMode::CountingFull;
    std::vector<NormalizationFactor> factors;
};

/// A fully expanded invariant: numerator polynomial plus the normalization
/// it is divided by.  Immutable after construction.
struct InvariantExpr {
    KernelSpec kernel;  // canonical
    MomentPolynomial numerator;
    Normalization normalization;
};

/// Expands the kernel and attaches the normalization for `mode`.  Returns
/// nullopt when the expansion is identically zero (a first-class outcome:
/// several enumerated kernels vanish by antisymmetry).
std::optional<InvariantExpr> build_invariant(const KernelSpec& spec, NormalizationMode mode);

/// Same, but throws ErrorCode::ZeroInvariant instead of returning nullopt.
InvariantExpr build_invariant_or_throw(const KernelSpec& spec, NormalizationMode mode);

/// Swaps the normalization of an existing expression for another mode.
InvariantExpr renormalize(const InvariantExpr& expr, NormalizationMode mode);

enum class StabilityClass { Stable, ConditionallyStable };

/// Parity analysis of a non-zero invariant.
///
/// The classification keys off the kernel structure: both side orders must
/// be even, and no point may participate solely in channel primitives an
/// odd number of times.  Such a point forces every expanded addend to carry
/// a pure-channel odd-order moment, which collapses whenever the channel
/// data is symmetric and is numerically fragile in general.  The remaining
/// flags report the stricter and weaker parity conditions separately so
/// callers can see why a kernel landed where it did.
struct StabilityReport {
    StabilityClass cls = StabilityClass::ConditionallyStable;
    bool orders_even = false;            // O_S and O_C both even
    bool participations_even = false;    // every point's total count even
    bool all_even_exponent_term = false; // some addend has every exponent even
    bool space_side_violation = false;   // space-only point with odd count
    bool channel_side_violation = false; // channel-only point with odd count
    std::vector<int> space_odd_points;   // points with odd space-side count
    std::vector<int> channel_odd_points; // points with odd channel-side count
    std::string reasons;
};

StabilityReport stability_classify(const InvariantExpr& expr);

}  // namespace dami
