#include "dami/core/synth.hpp"

#include "dami/core/random.hpp"

namespace dami {

ObjectMN synth_object(int space_dim, int channel_dim, std::size_t points, std::uint64_t seed) {
    if (points < 1) fail(ErrorCode::InvalidArgument, "need at least one point");
    Rng rng(Rng::derive(seed, 0x5b17a));

    // Per-object channel mixing weights.
    std::vector<double> mix(static_cast<std::size_t>(channel_dim) * space_dim);
    std::vector<double> quad(static_cast<std::size_t>(channel_dim));
    for (auto& v : mix) v = rng.uniform(-1.0, 1.0);
    for (auto& v : quad) v = rng.uniform(0.2, 0.8);

    std::vector<double> coords(points * static_cast<std::size_t>(space_dim));
    std::vector<double> channels(points * static_cast<std::size_t>(channel_dim));
    for (std::size_t i = 0; i < points; ++i) {
        for (int a = 0; a < space_dim; ++a)
            coords[i * static_cast<std::size_t>(space_dim) + static_cast<std::size_t>(a)] = rng.gauss();
        for (int a = 0; a < channel_dim; ++a) {
            double v = 0.0;
            for (int b = 0; b < space_dim; ++b)
                v += mix[static_cast<std::size_t>(a * space_dim + b)] *
                     coords[i * static_cast<std::size_t>(space_dim) + static_cast<std::size_t>(b)];
            double q = coords[i * static_cast<std::size_t>(space_dim) +
                              static_cast<std::size_t>(a % space_dim)];
            v += quad[static_cast<std::size_t>(a)] * q * q;
            v += 0.1 * rng.gauss();
            channels[i * static_cast<std::size_t>(channel_dim) + static_cast<std::size_t>(a)] = v;
        }
    }
    return ObjectMN(space_dim, channel_dim, std::move(coords), std::move(channels));
}

}  // namespace dami
