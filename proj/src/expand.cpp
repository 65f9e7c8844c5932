#include "dami/core/expand.hpp"

#include <algorithm>
#include <numeric>

namespace dami {

namespace {

int permutation_sign(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return inversions % 2 ? -1 : 1;
}

}  // namespace

PerPointPoly expand_primitive(const Primitive& p, int space_dim, int channel_dim, int degree) {
    int arity = p.kind == PrimitiveKind::Space ? space_dim : channel_dim;
    if (static_cast<int>(p.points.size()) != arity)
        fail(ErrorCode::Validation, "primitive arity mismatch for dims (" +
                                        std::to_string(space_dim) + "," + std::to_string(channel_dim) + ")");
    for (int id : p.points)
        if (id < 1 || id > degree)
            fail(ErrorCode::Validation, "primitive references point id outside 1.." + std::to_string(degree));
    int stride = space_dim + channel_dim;
    int axis_base = p.kind == PrimitiveKind::Space ? 0 : space_dim;

    PerPointPoly out;
    out.space_dim = space_dim;
    out.channel_dim = channel_dim;
    out.degree = degree;

    std::vector<int> perm(static_cast<std::size_t>(arity));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        // column j (point p.points[j]) takes axis perm[j]
        std::vector<std::uint8_t> exps(static_cast<std::size_t>(degree * stride), 0);
        for (int j = 0; j < arity; ++j) {
            int point = p.points[static_cast<std::size_t>(j)];
            int axis = perm[static_cast<std::size_t>(j)];
            exps[static_cast<std::size_t>((point - 1) * stride + axis_base + axis)] += 1;
        }
        out.terms[exps] += Rational(permutation_sign(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

PerPointPoly multiply(const PerPointPoly& a, const PerPointPoly& b) {
    PerPointPoly out;
    out.space_dim = a.space_dim;
    out.channel_dim = a.channel_dim;
    out.degree = a.degree;
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            std::vector<std::uint8_t> e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint8_t>(e[i] + eb[i]);
            Rational c = ca * cb;
            auto it = out.terms.find(e);
            if (it == out.terms.end())
                out.terms.emplace(std::move(e), c);
            else {
                it->second += c;
                if (it->second.is_zero()) out.terms.erase(it);
            }
        }
    }
    return out;
}

MomentPolynomial integrate(const PerPointPoly& poly) {
    int stride = poly.space_dim + poly.channel_dim;
    MomentPolynomial out(poly.space_dim, poly.channel_dim);
    for (const auto& [exps, coeff] : poly.terms) {
        std::vector<MomentKey> factors;
        factors.reserve(static_cast<std::size_t>(poly.degree));
        for (int pt = 0; pt < poly.degree; ++pt) {
            MomentKey k;
            auto begin = exps.begin() + pt * stride;
            k.spatial.assign(begin, begin + poly.space_dim);
            k.channel.assign(begin + poly.space_dim, begin + stride);
            factors.push_back(std::move(k));
        }
        out.add_term(coeff, std::move(factors));
    }
    out.normalize();
    return out;
}

MomentPolynomial expand_kernel(const KernelSpec& spec) {
    auto ids = spec.point_ids();
    int degree = static_cast<int>(ids.size());
    for (int i = 0; i < degree; ++i)
        if (ids[static_cast<std::size_t>(i)] != i + 1)
            fail(ErrorCode::Validation,
                 "expansion requires point ids 1.." + std::to_string(degree) +
                     "; canonicalize the kernel first");

    PerPointPoly acc;
    acc.space_dim = spec.space_dim();
    acc.channel_dim = spec.channel_dim();
    acc.degree = degree;
    acc.terms[std::vector<std::uint8_t>(
        static_cast<std::size_t>(degree * (spec.space_dim() + spec.channel_dim())), 0)] = Rational(1);

    for (const auto& p : spec.primitives()) {
        PerPointPoly single = expand_primitive(p, spec.space_dim(), spec.channel_dim(), degree);
        for (int t = 0; t < p.exponent; ++t) acc = multiply(acc, single);
    }
    return integrate(acc);
}

MomentPolynomial channel_norm_polynomial(int space_dim, int channel_dim) {
    Primitive p;
    p.kind = PrimitiveKind::Channel;
    for (int i = 1; i <= channel_dim; ++i) p.points.push_back(i);
    p.exponent = 2;
    return expand_kernel(KernelSpec(space_dim, channel_dim, {p}));
}

MomentPolynomial spatial_norm_polynomial(int space_dim, int channel_dim) {
    Primitive p;
    p.kind = PrimitiveKind::Space;
    for (int i = 1; i <= space_dim; ++i) p.points.push_back(i);
    p.exponent = 2;
    return expand_kernel(KernelSpec(space_dim, channel_dim, {p}));
}

}  // namespace dami
