#include <algorithm>
#include <set>

#include "doctest.h"

#include "dami/core/enumerate.hpp"
#include "dami/core/expand.hpp"
#include "golden.hpp"

using namespace dami;

TEST_CASE("tiny bounds admit exactly one dual kernel") {
    EnumerateOptions opt;
    opt.max_degree = 3;
    opt.max_order = 2;
    auto list = enumerate_kernels(3, 3, opt);
    REQUIRE(list.size() == 1);
    CHECK(list[0] == KernelSpec::parse("S(1,2,3)*C(1,2,3)", 3, 3).canonicalize());

    EnumerateOptions opt22;
    opt22.max_degree = 2;
    opt22.max_order = 2;
    auto list22 = enumerate_kernels(2, 2, opt22);
    REQUIRE(list22.size() == 1);
    CHECK(list22[0] == KernelSpec::parse("S(1,2)*C(1,2)", 2, 2).canonicalize());
}

TEST_CASE("bounds too small for any kernel give an empty list") {
    EnumerateOptions opt;
    opt.max_degree = 2;  // a 3-point primitive cannot fit
    opt.max_order = 4;
    CHECK(enumerate_kernels(3, 3, opt).empty());
}

TEST_CASE("no two enumerated kernels share a canonical form") {
    EnumerateOptions opt;
    auto list = enumerate_kernels(3, 3, opt);
    std::set<KernelSpec> unique(list.begin(), list.end());
    CHECK(unique.size() == list.size());
    for (const auto& k : list) CHECK(k.is_canonical());
}

TEST_CASE("the (3,3) enumeration covers the full published table") {
    EnumerateOptions opt;  // degree <= 4, order <= 4, dual
    auto list = enumerate_kernels(3, 3, opt);
    std::set<KernelSpec> enumerated(list.begin(), list.end());
    std::set<KernelSpec> table;
    for (const auto& row : golden::table33()) {
        auto canon = golden::parse33(row.combination).canonicalize();
        INFO("row ", row.id, " missing from enumeration");
        CHECK(enumerated.count(canon) == 1);
        table.insert(canon);
    }
    CHECK(table.size() == 29);  // the 29 published rows are pairwise distinct classes

    // classes beyond the published table are expected and reported
    std::vector<KernelSpec> extras;
    for (const auto& k : list)
        if (!table.count(k)) extras.push_back(k);
    CHECK(list.size() == 33);
    CHECK(extras.size() == 4);
    for (const auto& k : extras) {
        INFO("extra class ", k.str());
        CHECK_FALSE(expand_kernel(k).empty());
    }
}

TEST_CASE("enumeration grows monotonically with the bounds") {
    EnumerateOptions small;
    small.max_degree = 3;
    small.max_order = 3;
    EnumerateOptions large;
    large.max_degree = 4;
    large.max_order = 4;
    auto a = enumerate_kernels(3, 3, small);
    auto b = enumerate_kernels(3, 3, large);
    std::set<KernelSpec> bigger(b.begin(), b.end());
    for (const auto& k : a) CHECK(bigger.count(k) == 1);
    CHECK(a.size() <= b.size());
}

TEST_CASE("require_dual filters one-sided kernels") {
    EnumerateOptions dual;
    dual.max_degree = 3;
    dual.max_order = 4;
    EnumerateOptions any = dual;
    any.require_dual = false;
    auto with = enumerate_kernels(3, 3, dual);
    auto without = enumerate_kernels(3, 3, any);
    CHECK(without.size() > with.size());
    for (const auto& k : with) {
        auto p = k.params();
        CHECK(p.space_order >= 1);
        CHECK(p.channel_order >= 1);
    }
}

TEST_CASE("enumeration output is deterministic") {
    EnumerateOptions opt;
    auto a = enumerate_kernels(3, 3, opt);
    auto b = enumerate_kernels(3, 3, opt);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}
