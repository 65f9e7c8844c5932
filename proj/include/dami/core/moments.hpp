#pragma once

#include <vector>

#include "dami/core/key.hpp"
#include "dami/core/object.hpp"

namespace dami {

struct Centroid {
    std::vector<double> spatial;
    std::vector<double> channel;
};

/// Weighted mean of coordinates and of channel values.
Centroid centroid(const ObjectMN& obj);

struct MomentOptions {
    /// Divide each axis by its max-abs before accumulation to keep high
    /// powers inside double range.  Off by default; equivalent to a diagonal
    /// affine map, so fully normalized invariants are unaffected.
    bool prescale = false;
};

/// Central moments for exactly the requested keys, as the weighted sum over
/// points of centered coordinate and channel powers (counting measure).
///
/// The zero key evaluates to the total weight.  Keys of total order 1 are
/// returned as exact 0.0: the weighted sum of centered values vanishes
/// identically, and returning the rounded residual instead would leak
/// centering noise into every expression that carries such a factor.
/// Centering itself runs two passes so the residual mean is at the last-ulp
/// level before that identity is applied.
MomentTable central_moments(const ObjectMN& obj, const std::vector<MomentKey>& keys,
                            const MomentOptions& options = {});

}  // namespace dami
