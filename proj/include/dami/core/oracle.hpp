#pragma once

#include <cstdint>

#include "dami/core/kernel.hpp"
#include "dami/core/object.hpp"

namespace dami {

struct OracleOptions {
    double tuple_budget = 1e7;    // max ordered tuples evaluated exactly
    bool allow_sampling = false;  // fall back to a seeded tuple sample
    std::uint64_t sample_seed = 0;
    std::uint64_t sample_count = 200000;
};

struct OracleResult {
    double value = 0.0;
    /// Sum of |contribution| across tuples: the natural scale for judging
    /// how close to zero the signed total is.
    double magnitude_scale = 0.0;
    bool approximate = false;
};

/// Direct evaluation of a kernel's covariant as the L-fold sum over ordered
/// point tuples (with repetition) of the weighted primitive determinant
/// product, on the centered object.  Independent of the symbolic expansion
/// path, which is the point: it is the ground truth the expansion is tested
/// against.  Repetition matters — the factorized moment form only equals
/// the sum when every point ranges over the whole object independently.
OracleResult brute_covariant(const ObjectMN& obj, const KernelSpec& spec,
                             const OracleOptions& options = {});

}  // namespace dami
