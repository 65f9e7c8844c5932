#pragma once

#include <vector>

#include "dami/core/kernel.hpp"

namespace dami {

struct EnumerateOptions {
    int max_degree = 4;       // bound on distinct points L
    int max_order = 4;        // bound on total exponent sum K
    bool require_dual = true; // keep only kernels with O_S >= 1 and O_C >= 1
};

/// All canonical kernel classes within the bounds, deduplicated by canonical
/// form and deterministically sorted.  Brute force over primitive multisets:
/// exact and cheap at the degrees this tool targets (L <= 8 enforced by
/// KernelSpec).  Bounds that admit nothing yield an empty list.
std::vector<KernelSpec> enumerate_kernels(int space_dim, int channel_dim,
                                          const EnumerateOptions& options);

}  // namespace dami
