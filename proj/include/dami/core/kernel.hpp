#pragma once

#include <string>
#include <vector>

#include "dami/core/error.hpp"

namespace dami {

enum class PrimitiveKind { Space, Channel };

/// A determinant primitive: the matrix of M point coordinates (Space) or of
/// N point channel vectors (Channel), raised to an integer power.  Point ids
/// are stored strictly increasing; the determinant of the sorted tuple is
/// taken as the positive orientation, which pins the sign of every
/// expansion built on top.
struct Primitive {
    PrimitiveKind kind = PrimitiveKind::Space;
    std::vector<int> points;  // strictly increasing, positive
    int exponent = 1;

    friend bool operator==(const Primitive& a, const Primitive& b) {
        return a.kind == b.kind && a.points == b.points && a.exponent == b.exponent;
    }
    friend bool operator<(const Primitive& a, const Primitive& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.points != b.points) return a.points < b.points;
        return a.exponent < b.exponent;
    }
};

/// Derived bookkeeping of a kernel: distinct point counts per side, exponent
/// sums per side, overall degree and order.
struct KernelParams {
    int space_points = 0;    // P
    int channel_points = 0;  // Q
    int space_order = 0;     // O_S
    int channel_order = 0;   // O_C
    int degree = 0;          // L
    int order = 0;           // K
};

/// A multiset of determinant primitives over a shared pool of point ids.
/// Two kernels describe the same object functional exactly when they are
/// related by a relabeling of point ids; `canonicalize` picks the
/// lexicographically minimal relabeling as the class representative.
class KernelSpec {
public:
    static constexpr int kMaxDegree = 8;

    KernelSpec() = default;
    /// Validates and normalizes (sorts tuples, merges equal primitives).
    KernelSpec(int space_dim, int channel_dim, std::vector<Primitive> primitives);

    int space_dim() const noexcept { return space_dim_; }
    int channel_dim() const noexcept { return channel_dim_; }
    const std::vector<Primitive>& primitives() const noexcept { return primitives_; }

    std::vector<int> point_ids() const;
    KernelParams params() const;

    /// Count of primitive slots each point occupies, split by side; index 0
    /// holds the space-side counts keyed by point id.
    void participation_counts(std::vector<int>& space, std::vector<int>& channel) const;

    bool is_canonical() const;
    KernelSpec canonicalize() const;
    KernelSpec relabel(const std::vector<int>& mapping) const;  // mapping[old_id] = new_id

    /// "S(1,2,3)^2*C(1,2,3)" rendering; parse accepts the same grammar.
    std::string str() const;
    static KernelSpec parse(const std::string& text, int space_dim, int channel_dim);

    friend bool operator==(const KernelSpec& a, const KernelSpec& b) {
        return a.space_dim_ == b.space_dim_ && a.channel_dim_ == b.channel_dim_ &&
               a.primitives_ == b.primitives_;
    }
    friend bool operator!=(const KernelSpec& a, const KernelSpec& b) { return !(a == b); }
    friend bool operator<(const KernelSpec& a, const KernelSpec& b) {
        return a.primitives_ < b.primitives_;
    }

private:
    int space_dim_ = 0;
    int channel_dim_ = 0;
    std::vector<Primitive> primitives_;  // sorted
};

}  // namespace dami
