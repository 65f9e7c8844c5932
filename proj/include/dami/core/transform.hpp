#pragma once

#include <string>
#include <vector>

#include "dami/core/affine.hpp"
#include "dami/core/object.hpp"

namespace dami {

/// Applies the spatial map to every coordinate and the channel map to every
/// channel vector, independently; weights pass through untouched.
ObjectMN apply_dual(const ObjectMN& obj, const AffineMap& spatial, const AffineMap& channel);

struct RankReduceReport {
    int spatial_rank = 0;
    int channel_rank = 0;
    bool spatial_reduced = false;
    bool channel_reduced = false;
    std::vector<double> spatial_eigenvalues;  // descending
    std::vector<double> channel_eigenvalues;
};

struct RankReduceResult {
    ObjectMN object;  // projected onto the retained principal directions
    RankReduceReport report;
};

/// Detects spatial or channel data confined to a lower-dimensional subspace
/// (where the corresponding normalizer determinant vanishes) and projects
/// onto the principal directions whose eigenvalue exceeds
/// tolerance * (largest eigenvalue).  Any other basis of the same subspace
/// differs by an invertible map, under which the reduced invariants are
/// unchanged, so the principal basis is just the numerically convenient
/// choice.  Throws NullSpace naming the side when a side has rank 0.
RankReduceResult rank_reduce(const ObjectMN& obj, double tolerance = 1e-9);

}  // namespace dami
