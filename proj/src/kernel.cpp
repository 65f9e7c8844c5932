#include "dami/core/kernel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace dami {

namespace {

void validate_primitive(const Primitive& p, int space_dim, int channel_dim) {
    int arity = p.kind == PrimitiveKind::Space ? space_dim : channel_dim;
    if (static_cast<int>(p.points.size()) != arity)
        fail(ErrorCode::Validation,
             "primitive arity mismatch: expected " + std::to_string(arity) + " point ids, got " +
                 std::to_string(p.points.size()));
    if (p.exponent < 1) fail(ErrorCode::Validation, "primitive exponent must be >= 1");
    std::set<int> seen;
    for (int id : p.points) {
        if (id < 1) fail(ErrorCode::Validation, "point ids must be positive");
        if (!seen.insert(id).second)
            fail(ErrorCode::Validation,
                 "duplicate point id " + std::to_string(id) +
                     " in one primitive (the determinant with equal columns is 0)");
    }
}

}  // namespace

KernelSpec::KernelSpec(int space_dim, int channel_dim, std::vector<Primitive> primitives)
    : space_dim_(space_dim), channel_dim_(channel_dim) {
    if (space_dim < 1 || channel_dim < 1)
        fail(ErrorCode::Validation, "kernel dimensions must be positive");
    if (primitives.empty()) fail(ErrorCode::Validation, "kernel needs at least one primitive");
    std::map<std::pair<PrimitiveKind, std::vector<int>>, int> merged;
    for (auto& p : primitives) {
        std::sort(p.points.begin(), p.points.end());
        validate_primitive(p, space_dim, channel_dim);
        merged[{p.kind, p.points}] += p.exponent;
    }
    for (auto& [key, exp] : merged)
        primitives_.push_back(Primitive{key.first, key.second, exp});
    std::sort(primitives_.begin(), primitives_.end());
    if (static_cast<int>(point_ids().size()) > kMaxDegree)
        fail(ErrorCode::Validation,
             "kernel degree exceeds the supported maximum of " + std::to_string(kMaxDegree));
}

std::vector<int> KernelSpec::point_ids() const {
    std::set<int> ids;
    for (const auto& p : primitives_) ids.insert(p.points.begin(), p.points.end());
    return {ids.begin(), ids.end()};
}

KernelParams KernelSpec::params() const {
    std::set<int> space_ids, channel_ids;
    KernelParams out;
    for (const auto& p : primitives_) {
        if (p.kind == PrimitiveKind::Space) {
            space_ids.insert(p.points.begin(), p.points.end());
            out.space_order += p.exponent;
        } else {
            channel_ids.insert(p.points.begin(), p.points.end());
            out.channel_order += p.exponent;
        }
    }
    std::set<int> all(space_ids);
    all.insert(channel_ids.begin(), channel_ids.end());
    out.space_points = static_cast<int>(space_ids.size());
    out.channel_points = static_cast<int>(channel_ids.size());
    out.degree = static_cast<int>(all.size());
    out.order = out.space_order + out.channel_order;
    return out;
}

void KernelSpec::participation_counts(std::vector<int>& space, std::vector<int>& channel) const {
    int max_id = 0;
    for (const auto& p : primitives_)
        for (int id : p.points) max_id = std::max(max_id, id);
    space.assign(static_cast<std::size_t>(max_id) + 1, 0);
    channel.assign(static_cast<std::size_t>(max_id) + 1, 0);
    for (const auto& p : primitives_) {
        auto& side = p.kind == PrimitiveKind::Space ? space : channel;
        for (int id : p.points) side[static_cast<std::size_t>(id)] += p.exponent;
    }
}

KernelSpec KernelSpec::relabel(const std::vector<int>& mapping) const {
    std::vector<Primitive> out;
    out.reserve(primitives_.size());
    for (const auto& p : primitives_) {
        Primitive q = p;
        for (auto& id : q.points) {
            if (id >= static_cast<int>(mapping.size()) || mapping[static_cast<std::size_t>(id)] < 1)
                fail(ErrorCode::InvalidArgument, "relabel mapping misses point id " + std::to_string(id));
            id = mapping[static_cast<std::size_t>(id)];
        }
        out.push_back(std::move(q));
    }
    return KernelSpec(space_dim_, channel_dim_, std::move(out));
}

bool KernelSpec::is_canonical() const { return *this == canonicalize(); }

KernelSpec KernelSpec::canonicalize() const {
    // Compact ids to 1..L first, then take the lexicographically minimal
    // relabeling over all L! bijections.  L <= 8 keeps this trivial.
    std::vector<int> ids = point_ids();
    int max_id = ids.back();
    std::vector<int> compact(static_cast<std::size_t>(max_id) + 1, 0);
    for (std::size_t i = 0; i < ids.size(); ++i)
        compact[static_cast<std::size_t>(ids[i])] = static_cast<int>(i) + 1;
    KernelSpec base = relabel(compact);

    int degree = static_cast<int>(ids.size());
    std::vector<int> perm(static_cast<std::size_t>(degree));
    std::iota(perm.begin(), perm.end(), 1);
    KernelSpec best = base;
    bool have = false;
    std::vector<int> mapping(static_cast<std::size_t>(degree) + 1, 0);
    do {
        for (int i = 0; i < degree; ++i) mapping[static_cast<std::size_t>(i) + 1] = perm[static_cast<std::size_t>(i)];
        KernelSpec candidate = base.relabel(mapping);
        if (!have || candidate < best) {
            best = candidate;
            have = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::string KernelSpec::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& p : primitives_) {
        if (!first) os << "*";
        first = false;
        os << (p.kind == PrimitiveKind::Space ? "S(" : "C(");
        for (std::size_t i = 0; i < p.points.size(); ++i) {
            if (i) os << ",";
            os << p.points[i];
        }
        os << ")";
        if (p.exponent > 1) os << "^" << p.exponent;
    }
    return os.str();
}

KernelSpec KernelSpec::parse(const std::string& text, int space_dim, int channel_dim) {
    std::vector<Primitive> prims;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto parse_int = [&](const char* what) {
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i)
            fail(ErrorCode::Parse, std::string("expected ") + what + " at offset " + std::to_string(start) +
                                        " in kernel '" + text + "'");
        return std::stoi(text.substr(start, i - start));
    };
    while (true) {
        skip_ws();
        if (i >= text.size()) break;
        char c = text[i];
        PrimitiveKind kind;
        if (c == 'S' || c == 's')
            kind = PrimitiveKind::Space;
        else if (c == 'C' || c == 'c')
            kind = PrimitiveKind::Channel;
        else
            fail(ErrorCode::Parse, "expected 'S' or 'C' at offset " + std::to_string(i) + " in kernel '" +
                                       text + "'");
        ++i;
        skip_ws();
        if (i >= text.size() || text[i] != '(')
            fail(ErrorCode::Parse, "expected '(' after primitive kind in kernel '" + text + "'");
        ++i;
        Primitive p;
        p.kind = kind;
        p.points.push_back(parse_int("point id"));
        skip_ws();
        while (i < text.size() && text[i] == ',') {
            ++i;
            p.points.push_back(parse_int("point id"));
            skip_ws();
        }
        if (i >= text.size() || text[i] != ')')
            fail(ErrorCode::Parse, "expected ')' in kernel '" + text + "'");
        ++i;
        skip_ws();
        p.exponent = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            p.exponent = parse_int("exponent");
        }
        prims.push_back(std::move(p));
        skip_ws();
        if (i < text.size()) {
            if (text[i] != '*')
                fail(ErrorCode::Parse, "expected '*' between primitives in kernel '" + text + "'");
            ++i;
        }
    }
    if (prims.empty()) fail(ErrorCode::Parse, "empty kernel expression");
    return KernelSpec(space_dim, channel_dim, std::move(prims));
}

}  // namespace dami
