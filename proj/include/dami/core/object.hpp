#pragma once

#include <span>
#include <vector>

#include "dami/core/error.hpp"

namespace dami {

/// A weighted point set in M-dimensional space with N channel values per
/// point.  Storage is flat row-major (point-major); immutable after
/// construction, so instances can be shared freely across workers.
class ObjectMN {
public:
    ObjectMN() = default;
    /// Validates: dims >= 1, at least one point, all entries finite, weights
    /// non-negative with positive total.  Pass an empty weight vector for
    /// unit weights.
    ObjectMN(int space_dim, int channel_dim, std::vector<double> coords,
             std::vector<double> channels, std::vector<double> weights = {});

    int space_dim() const noexcept { return space_dim_; }
    int channel_dim() const noexcept { return channel_dim_; }
    std::size_t point_count() const noexcept { return count_; }
    double total_weight() const noexcept { return total_weight_; }

    std::span<const double> coords(std::size_t i) const {
        return {coords_.data() + i * space_dim_, static_cast<std::size_t>(space_dim_)};
    }
    std::span<const double> channels(std::size_t i) const {
        return {channels_.data() + i * channel_dim_, static_cast<std::size_t>(channel_dim_)};
    }
    double weight(std::size_t i) const { return weights_[i]; }

    const std::vector<double>& coord_data() const noexcept { return coords_; }
    const std::vector<double>& channel_data() const noexcept { return channels_; }
    const std::vector<double>& weight_data() const noexcept { return weights_; }

private:
    int space_dim_ = 0;
    int channel_dim_ = 0;
    std::size_t count_ = 0;
    double total_weight_ = 0.0;
    std::vector<double> coords_;
    std::vector<double> channels_;
    std::vector<double> weights_;
};

}  // namespace dami
