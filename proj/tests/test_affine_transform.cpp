#include <cmath>

#include "doctest.h"

#include "dami/core/linalg.hpp"
#include "dami/core/synth.hpp"
#include "dami/core/transform.hpp"
#include "golden.hpp"

using namespace dami;

TEST_CASE("affine map composition and inversion agree with direct application") {
    AffineMap a = sample_affine(3, 1, AffineFamily::GeneralAffine);
    AffineMap b = sample_affine(3, 2, AffineFamily::GeneralAffine);
    std::vector<double> x = {0.3, -1.2, 2.5};
    auto via_compose = a.compose(b).apply(x);
    auto via_two = a.apply(b.apply(x));
    for (int i = 0; i < 3; ++i)
        CHECK(via_compose[static_cast<std::size_t>(i)] ==
              doctest::Approx(via_two[static_cast<std::size_t>(i)]).epsilon(1e-12));

    auto inv = a.inverse();
    auto round = inv.apply(a.apply(x));
    for (int i = 0; i < 3; ++i)
        CHECK(round[static_cast<std::size_t>(i)] == doctest::Approx(x[static_cast<std::size_t>(i)]).epsilon(1e-10));

    AffineMap singular = AffineMap::identity(2);
    singular.linear = {1, 2, 2, 4};
    CHECK_THROWS_AS(singular.inverse(), Error);
}

TEST_CASE("sampled rotation is orthogonal with determinant +1") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto map = sample_affine(3, seed, AffineFamily::Rotation);
        CHECK(map.det() == doctest::Approx(1.0).epsilon(1e-10));
        // R^T R = I
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double dot = 0.0;
                for (int k = 0; k < 3; ++k) dot += map.linear[k * 3 + i] * map.linear[k * 3 + j];
                CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
            }
        for (double v : map.offset) CHECK(v == 0.0);
    }
}

TEST_CASE("sampled translation has identity linear part and nonzero offset") {
    auto map = sample_affine(3, 9, AffineFamily::Translation);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(map.linear[i * 3 + j] == (i == j ? 1.0 : 0.0));
    double norm = 0.0;
    for (double v : map.offset) norm += std::abs(v);
    CHECK(norm > 1e-6);
}

TEST_CASE("sampled scaling is positive diagonal within the determinant bounds") {
    auto map = sample_affine(3, 4, AffineFamily::Scaling);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j)
                CHECK(map.linear[i * 3 + j] > 0.0);
            else
                CHECK(map.linear[i * 3 + j] == 0.0);
        }
    CHECK(map.det() >= 0.2);
    CHECK(map.det() <= 5.0);
}

TEST_CASE("general affine sampling meets its constraints and is deterministic") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto map = sample_affine(3, seed, AffineFamily::GeneralAffine);
        CHECK(map.det() > 0.0);
        CHECK(map.det() >= 0.2);
        CHECK(map.det() <= 5.0);
        CHECK(map.cond() <= 10.0);
    }
    auto a = sample_affine(3, 123, AffineFamily::GeneralAffine);
    auto b = sample_affine(3, 123, AffineFamily::GeneralAffine);
    CHECK(a.linear == b.linear);
    CHECK(a.offset == b.offset);
}

TEST_CASE("apply_dual moves coordinates and channels independently") {
    auto obj = synth_object(3, 3, 50, 21);
    auto identity3 = AffineMap::identity(3);

    auto same = apply_dual(obj, identity3, identity3);
    CHECK(same.coord_data() == obj.coord_data());
    CHECK(same.channel_data() == obj.channel_data());
    CHECK(same.weight_data() == obj.weight_data());

    auto spatial = sample_affine(3, 5, AffineFamily::GeneralAffine);
    auto spatial_only = apply_dual(obj, spatial, identity3);
    CHECK(spatial_only.channel_data() == obj.channel_data());  // bit-identical
    CHECK(spatial_only.point_count() == obj.point_count());

    // composition law
    auto a_sp = sample_affine(3, 6, AffineFamily::GeneralAffine);
    auto a_ch = sample_affine(3, 7, AffineFamily::GeneralAffine);
    auto b_sp = sample_affine(3, 8, AffineFamily::GeneralAffine);
    auto b_ch = sample_affine(3, 9, AffineFamily::GeneralAffine);
    auto two_steps = apply_dual(apply_dual(obj, a_sp, a_ch), b_sp, b_ch);
    auto one_step = apply_dual(obj, b_sp.compose(a_sp), b_ch.compose(a_ch));
    for (std::size_t i = 0; i < obj.point_count() * 3; ++i) {
        CHECK(two_steps.coord_data()[i] == doctest::Approx(one_step.coord_data()[i]).epsilon(1e-12));
        CHECK(two_steps.channel_data()[i] == doctest::Approx(one_step.channel_data()[i]).epsilon(1e-12));
    }
    CHECK_THROWS_AS(apply_dual(obj, AffineMap::identity(2), identity3), Error);
}

TEST_CASE("rank_reduce detects a planar cloud") {
    auto base = synth_object(2, 3, 80, 31);  // 2D cloud with 3 channels
    std::vector<double> coords;
    for (std::size_t i = 0; i < base.point_count(); ++i) {
        coords.push_back(base.coords(i)[0]);
        coords.push_back(base.coords(i)[1]);
        coords.push_back(0.7);  // constant third axis
    }
    ObjectMN planar(3, 3, std::move(coords), base.channel_data());
    auto result = rank_reduce(planar);
    CHECK(result.report.spatial_rank == 2);
    CHECK(result.report.spatial_reduced);
    CHECK(result.report.channel_rank == 3);
    CHECK_FALSE(result.report.channel_reduced);
    CHECK(result.object.space_dim() == 2);
    CHECK(result.object.channel_dim() == 3);
}

TEST_CASE("rank_reduce detects linearly dependent channels") {
    auto base = synth_object(3, 2, 80, 33);
    std::vector<double> channels;
    for (std::size_t i = 0; i < base.point_count(); ++i) {
        double r = base.channels(i)[0], g = base.channels(i)[1];
        channels.push_back(r);
        channels.push_back(g);
        channels.push_back(r + g);  // exactly dependent third channel
    }
    ObjectMN obj(3, 3, base.coord_data(), std::move(channels));
    auto result = rank_reduce(obj);
    CHECK(result.report.channel_rank == 2);
    CHECK(result.object.channel_dim() == 2);
}

TEST_CASE("rank_reduce keeps a full-rank cloud intact") {
    auto obj = synth_object(3, 3, 100, 35);
    auto result = rank_reduce(obj);
    CHECK(result.report.spatial_rank == 3);
    CHECK(result.report.channel_rank == 3);
    CHECK_FALSE(result.report.spatial_reduced);
    CHECK_FALSE(result.report.channel_reduced);
    CHECK(result.object.coord_data() == obj.coord_data());
}

TEST_CASE("rank_reduce fails loudly on rank-0 sides") {
    // single color
    auto base = synth_object(3, 3, 40, 37);
    std::vector<double> flat(base.point_count() * 3);
    for (std::size_t i = 0; i < base.point_count(); ++i) {
        flat[i * 3 + 0] = 0.25;
        flat[i * 3 + 1] = 0.5;
        flat[i * 3 + 2] = 0.75;
    }
    ObjectMN single_color(3, 3, base.coord_data(), flat);
    CHECK_THROWS_WITH_AS(static_cast<void>(rank_reduce(single_color)),
                         doctest::Contains("channel"), Error);

    // all points coincident
    std::vector<double> same(base.point_count() * 3, 1.0);
    ObjectMN coincident(3, 3, same, base.channel_data());
    CHECK_THROWS_WITH_AS(static_cast<void>(rank_reduce(coincident)), doctest::Contains("spatial"),
                         Error);
}

TEST_CASE("affine maps cannot change the detected ranks") {
    auto obj = synth_object(3, 3, 90, 41);
    auto before = rank_reduce(obj).report;
    auto sp = sample_affine(3, 51, AffineFamily::GeneralAffine);
    auto ch = sample_affine(3, 52, AffineFamily::GeneralAffine);
    auto after = rank_reduce(apply_dual(obj, sp, ch)).report;
    CHECK(before.spatial_rank == after.spatial_rank);
    CHECK(before.channel_rank == after.channel_rank);
}
