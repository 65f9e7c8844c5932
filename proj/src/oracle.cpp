#include "dami/core/oracle.hpp"

#include <cmath>

#include "dami/core/linalg.hpp"
#include "dami/core/moments.hpp"
#include "dami/core/random.hpp"

namespace dami {

namespace {

double ipow(double base, int exp) {
    double out = 1.0;
    while (exp > 0) {
        if (exp & 1) out *= base;
        base *= base;
        exp >>= 1;
    }
    return out;
}

// Kernel value on one ordered tuple of point indexes (ids 1..L -> tuple slot).
double tuple_contribution(const KernelSpec& spec, const std::vector<std::size_t>& tuple,
                          const std::vector<double>& cs, const std::vector<double>& cc,
                          const std::vector<double>& w, int M, int N) {
    double value = 1.0;
    for (std::size_t slot = 0; slot < tuple.size(); ++slot) value *= w[tuple[slot]];
    std::vector<double> mat;
    for (const auto& p : spec.primitives()) {
        int dim = p.kind == PrimitiveKind::Space ? M : N;
        const std::vector<double>& data = p.kind == PrimitiveKind::Space ? cs : cc;
        mat.assign(static_cast<std::size_t>(dim) * dim, 0.0);
        for (int col = 0; col < dim; ++col) {
            std::size_t point = tuple[static_cast<std::size_t>(p.points[static_cast<std::size_t>(col)] - 1)];
            for (int row = 0; row < dim; ++row)
                mat[row * dim + col] = data[point * static_cast<std::size_t>(dim) + static_cast<std::size_t>(row)];
        }
        value *= ipow(determinant(mat, dim), p.exponent);
        if (value == 0.0) return 0.0;
    }
    return value;
}

}  // namespace

OracleResult brute_covariant(const ObjectMN& obj, const KernelSpec& spec,
                             const OracleOptions& options) {
    if (spec.space_dim() != obj.space_dim() || spec.channel_dim() != obj.channel_dim())
        fail(ErrorCode::Validation, "kernel dimensions do not match the object");
    auto ids = spec.point_ids();
    const int L = static_cast<int>(ids.size());
    for (int i = 0; i < L; ++i)
        if (ids[static_cast<std::size_t>(i)] != i + 1)
            fail(ErrorCode::Validation, "oracle requires point ids 1..L; canonicalize the kernel first");

    const int M = obj.space_dim();
    const int N = obj.channel_dim();
    const std::size_t n = obj.point_count();

    // The moment expansion is written in central moments, so the comparison
    // target is the centered object.
    Centroid c = centroid(obj);
    std::vector<double> cs(obj.coord_data());
    std::vector<double> cc(obj.channel_data());
    for (std::size_t i = 0; i < n; ++i) {
        for (int a = 0; a < M; ++a) cs[i * static_cast<std::size_t>(M) + static_cast<std::size_t>(a)] -= c.spatial[static_cast<std::size_t>(a)];
        for (int a = 0; a < N; ++a) cc[i * static_cast<std::size_t>(N) + static_cast<std::size_t>(a)] -= c.channel[static_cast<std::size_t>(a)];
    }

    double total_tuples = std::pow(static_cast<double>(n), L);
    OracleResult out;
    KahanSum sum, scale;

    if (total_tuples <= options.tuple_budget) {
        std::vector<std::size_t> tuple(static_cast<std::size_t>(L), 0);
        while (true) {
            double v = tuple_contribution(spec, tuple, cs, cc, obj.weight_data(), M, N);
            sum.add(v);
            scale.add(std::abs(v));
            int slot = L - 1;
            while (slot >= 0) {
                if (++tuple[static_cast<std::size_t>(slot)] < n) break;
                tuple[static_cast<std::size_t>(slot)] = 0;
                --slot;
            }
            if (slot < 0) break;
        }
        out.value = sum.value();
        out.magnitude_scale = scale.value();
        out.approximate = false;
        return out;
    }

    if (!options.allow_sampling)
        fail(ErrorCode::Budget, "tuple count " + std::to_string(total_tuples) +
                                    " exceeds the budget and sampling is disabled");

    Rng rng(Rng::derive(options.sample_seed, 0x07ac1eULL));
    std::vector<std::size_t> tuple(static_cast<std::size_t>(L), 0);
    for (std::uint64_t s = 0; s < options.sample_count; ++s) {
        for (int slot = 0; slot < L; ++slot)
            tuple[static_cast<std::size_t>(slot)] = static_cast<std::size_t>(rng.next_u64() % n);
        double v = tuple_contribution(spec, tuple, cs, cc, obj.weight_data(), M, N);
        sum.add(v);
        scale.add(std::abs(v));
    }
    double factor = total_tuples / static_cast<double>(options.sample_count);
    out.value = sum.value() * factor;
    out.magnitude_scale = scale.value() * factor;
    out.approximate = true;
    return out;
}

}  // namespace dami
