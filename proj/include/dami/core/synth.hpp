#pragma once

#include <cstdint>

#include "dami/core/object.hpp"

namespace dami {

/// Deterministic colored test cloud: Gaussian coordinates, channels built
/// from a random linear mix of the coordinates plus quadratic terms and
/// noise, so both the spatial and the channel second-moment matrices are
/// full rank with overwhelming margin.
ObjectMN synth_object(int space_dim, int channel_dim, std::size_t points, std::uint64_t seed);

}  // namespace dami
