#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dami {

/// Multi-index of a central moment: one exponent per spatial axis followed
/// by one per channel.  Keys are totally ordered (spatial exponents first,
/// then channel exponents, lexicographically), which fixes the canonical
/// sort used everywhere downstream.
struct MomentKey {
    std::vector<std::uint8_t> spatial;
    std::vector<std::uint8_t> channel;

    int space_dim() const noexcept { return static_cast<int>(spatial.size()); }
    int channel_dim() const noexcept { return static_cast<int>(channel.size()); }

    int spatial_order() const noexcept {
        int s = 0;
        for (auto e : spatial) s += e;
        return s;
    }
    int channel_order() const noexcept {
        int s = 0;
        for (auto e : channel) s += e;
        return s;
    }
    int total_order() const noexcept { return spatial_order() + channel_order(); }

    bool all_exponents_even() const noexcept {
        for (auto e : spatial)
            if (e % 2) return false;
        for (auto e : channel)
            if (e % 2) return false;
        return true;
    }

    static MomentKey zero(int space_dim, int channel_dim) {
        MomentKey k;
        k.spatial.assign(static_cast<std::size_t>(space_dim), 0);
        k.channel.assign(static_cast<std::size_t>(channel_dim), 0);
        return k;
    }

    /// Concatenated exponents, spatial then channel (the wire layout).
    std::vector<int> flat() const {
        std::vector<int> out;
        out.reserve(spatial.size() + channel.size());
        for (auto e : spatial) out.push_back(e);
        for (auto e : channel) out.push_back(e);
        return out;
    }

    /// "u_{001001}" for single-digit exponents, "u_{0,0,12,...}" otherwise.
    std::string label() const;

    friend bool operator==(const MomentKey& a, const MomentKey& b) {
        return a.spatial == b.spatial && a.channel == b.channel;
    }
    friend bool operator!=(const MomentKey& a, const MomentKey& b) { return !(a == b); }
    friend bool operator<(const MomentKey& a, const MomentKey& b) {
        if (a.spatial != b.spatial) return a.spatial < b.spatial;
        return a.channel < b.channel;
    }
};

using MomentTable = std::map<MomentKey, double>;

}  // namespace dami
