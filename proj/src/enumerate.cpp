#include "dami/core/enumerate.hpp"

#include <algorithm>
#include <set>

namespace dami {

namespace {

// Point tuples of the given arity over {1..max_degree}, ascending.
std::vector<std::vector<int>> point_tuples(int arity, int max_degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(cur.size()) == arity) {
            out.push_back(cur);
            return;
        }
        int remaining = arity - static_cast<int>(cur.size());
        for (int id = next; id + remaining - 1 <= max_degree; ++id) {
            cur.push_back(id);
            self(self, id + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

}  // namespace

std::vector<KernelSpec> enumerate_kernels(int space_dim, int channel_dim,
                                          const EnumerateOptions& options) {
    if (options.max_degree < 1 || options.max_order < 1) return {};
    if (options.max_degree > KernelSpec::kMaxDegree)
        fail(ErrorCode::InvalidArgument,
             "max_degree exceeds the supported maximum of " + std::to_string(KernelSpec::kMaxDegree));

    struct Candidate {
        PrimitiveKind kind;
        std::vector<int> points;
    };
    std::vector<Candidate> candidates;
    if (space_dim <= options.max_degree)
        for (auto& pts : point_tuples(space_dim, options.max_degree))
            candidates.push_back({PrimitiveKind::Space, pts});
    if (channel_dim <= options.max_degree)
        for (auto& pts : point_tuples(channel_dim, options.max_degree))
            candidates.push_back({PrimitiveKind::Channel, pts});

    std::set<KernelSpec> seen;
    std::vector<Primitive> chosen;

    // Multisets of candidate primitives with total exponent <= max_order.
    auto rec = [&](auto&& self, std::size_t index, int budget) -> void {
        if (!chosen.empty()) {
            KernelSpec spec(space_dim, channel_dim, chosen);
            KernelParams kp = spec.params();
            bool dual_ok = !options.require_dual || (kp.space_order >= 1 && kp.channel_order >= 1);
            if (kp.degree <= options.max_degree && dual_ok) seen.insert(spec.canonicalize());
        }
        if (index == candidates.size() || budget == 0) return;
        self(self, index + 1, budget);
        for (int e = 1; e <= budget; ++e) {
            chosen.push_back(Primitive{candidates[index].kind, candidates[index].points, e});
            self(self, index + 1, budget - e);
            chosen.pop_back();
        }
    };
    rec(rec, 0, options.max_order);

    std::vector<KernelSpec> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](const KernelSpec& a, const KernelSpec& b) {
        KernelParams ka = a.params(), kb = b.params();
        if (ka.degree != kb.degree) return ka.degree < kb.degree;
        if (ka.order != kb.order) return ka.order < kb.order;
        return a < b;
    });
    return out;
}

}  // namespace dami
