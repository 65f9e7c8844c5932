#pragma once

#include <cstdint>

namespace dami {

/// splitmix64: used both as a generator and to derive stream seeds.  All
/// randomness in the toolkit flows through this so that runs are bit-stable
/// across compilers and standard libraries (std::uniform_real_distribution
/// is implementation-defined).
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (two uniforms per pair, second value
    /// discarded for simplicity; determinism matters more than throughput).
    double gauss();

    /// Derives an independent stream for (seed, a, b) without correlating
    /// nearby indices.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);
};

}  // namespace dami
