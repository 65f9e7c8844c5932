#include "dami/core/object.hpp"

#include <cmath>

namespace dami {

ObjectMN::ObjectMN(int space_dim, int channel_dim, std::vector<double> coords,
                   std::vector<double> channels, std::vector<double> weights)
    : space_dim_(space_dim),
      channel_dim_(channel_dim),
      coords_(std::move(coords)),
      channels_(std::move(channels)),
      weights_(std::move(weights)) {
    if (space_dim_ < 1 || channel_dim_ < 1)
        fail(ErrorCode::Validation, "object dimensions must be positive");
    if (coords_.empty() || coords_.size() % static_cast<std::size_t>(space_dim_) != 0)
        fail(ErrorCode::Validation, "coordinate array size is not a multiple of the spatial dimension");
    count_ = coords_.size() / static_cast<std::size_t>(space_dim_);
    if (channels_.size() != count_ * static_cast<std::size_t>(channel_dim_))
        fail(ErrorCode::Validation, "channel array size does not match the point count");
    if (weights_.empty())
        weights_.assign(count_, 1.0);
    else if (weights_.size() != count_)
        fail(ErrorCode::Validation, "weight array size does not match the point count");

    for (double v : coords_)
        if (!std::isfinite(v)) fail(ErrorCode::Validation, "non-finite coordinate");
    for (double v : channels_)
        if (!std::isfinite(v)) fail(ErrorCode::Validation, "non-finite channel value");
    double total = 0.0;
    for (double w : weights_) {
        if (!std::isfinite(w) || w < 0.0) fail(ErrorCode::Validation, "weights must be finite and >= 0");
        total += w;
    }
    if (!(total > 0.0)) fail(ErrorCode::Validation, "total weight must be positive");
    total_weight_ = total;
}

}  // namespace dami
