#pragma once

#include <cstdint>
#include <vector>

#include "dami/core/error.hpp"

namespace dami {

/// Invertible map x -> linear * x + offset.  `linear` is row-major dim x dim.
struct AffineMap {
    int dim = 0;
    std::vector<double> linear;
    std::vector<double> offset;

    static AffineMap identity(int dim);

    double det() const;
    double cond() const;

    /// this after other: (this o other)(x) = this(other(x)).
    AffineMap compose(const AffineMap& other) const;
    /// Throws Validation when |det| <= tol.
    AffineMap inverse(double tol = 1e-12) const;

    std::vector<double> apply(const std::vector<double>& x) const;

    void validate() const;
};

enum class AffineFamily { Translation, Rotation, Scaling, GeneralAffine };

struct SampleConstraints {
    double det_min = 0.2;
    double det_max = 5.0;
    double cond_max = 10.0;
    bool allow_reflection = false;  // when false the determinant is positive
    int max_rejects = 100000;
};

/// Deterministic draw of an affine map for the given seed.
///   Translation: identity linear part, nonzero offset.
///   Rotation:    orthogonal linear part with det +1, zero offset.
///   Scaling:     positive diagonal within the determinant bounds.
///   GeneralAffine: dense entries uniform in [-1,1], rejection-sampled to
///                  meet the determinant and condition bounds.
/// Throws Budget when the rejection budget is exhausted.
AffineMap sample_affine(int dim, std::uint64_t seed, AffineFamily family,
                        const SampleConstraints& constraints = {});

const char* affine_family_name(AffineFamily family);

}  // namespace dami
