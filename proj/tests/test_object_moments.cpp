#include <cmath>

#include "doctest.h"

#include "dami/core/moments.hpp"
#include "dami/core/random.hpp"
#include "dami/core/synth.hpp"
#include "golden.hpp"

using namespace dami;

TEST_CASE("object validation rejects malformed input") {
    CHECK_THROWS_AS(ObjectMN(3, 3, {}, {}), Error);                       // empty
    CHECK_THROWS_AS(ObjectMN(3, 3, {1, 2}, {1, 2, 3}), Error);            // bad coord count
    CHECK_THROWS_AS(ObjectMN(1, 1, {1.0}, {std::nan("")}), Error);        // non-finite
    CHECK_THROWS_AS(ObjectMN(1, 1, {1.0}, {1.0}, {-1.0}), Error);         // negative weight
    CHECK_THROWS_AS(ObjectMN(1, 1, {1.0, 2.0}, {1.0, 2.0}, {0.0, 0.0}), Error);  // zero total
}

TEST_CASE("centroid of a single point is that point") {
    ObjectMN obj(3, 3, {1, 2, 3}, {4, 5, 6});
    auto c = centroid(obj);
    CHECK(c.spatial == std::vector<double>{1, 2, 3});
    CHECK(c.channel == std::vector<double>{4, 5, 6});
}

TEST_CASE("centroid of a symmetric pair is the origin") {
    ObjectMN obj(3, 3, {1, 2, 3, -1, -2, -3}, {4, 5, 6, -4, -5, -6});
    auto c = centroid(obj);
    for (double v : c.spatial) CHECK(v == doctest::Approx(0.0).epsilon(1e-15));
    for (double v : c.channel) CHECK(v == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("centroid matches an independent plain-sum recomputation") {
    auto obj = synth_object(3, 3, 100, 42);
    auto c = centroid(obj);
    for (int axis = 0; axis < 3; ++axis) {
        double sum = 0.0, wsum = 0.0;
        for (std::size_t i = 0; i < obj.point_count(); ++i) {
            sum += obj.weight(i) * obj.coords(i)[static_cast<std::size_t>(axis)];
            wsum += obj.weight(i);
        }
        CHECK(c.spatial[static_cast<std::size_t>(axis)] ==
              doctest::Approx(sum / wsum).epsilon(1e-12));
    }
}

TEST_CASE("first-order central moments are exactly zero, mass is total weight") {
    auto obj = synth_object(3, 3, 100, 7);
    std::vector<MomentKey> keys;
    keys.push_back(MomentKey::zero(3, 3));
    for (int a = 0; a < 3; ++a) {
        MomentKey k = MomentKey::zero(3, 3);
        k.spatial[static_cast<std::size_t>(a)] = 1;
        keys.push_back(k);
        MomentKey c = MomentKey::zero(3, 3);
        c.channel[static_cast<std::size_t>(a)] = 1;
        keys.push_back(c);
    }
    auto table = central_moments(obj, keys);
    CHECK(table[MomentKey::zero(3, 3)] == doctest::Approx(100.0));
    for (std::size_t i = 1; i < keys.size(); ++i) CHECK(table[keys[i]] == 0.0);
}

TEST_CASE("second-order channel moments assemble the weighted covariance") {
    auto obj = synth_object(3, 3, 120, 11);
    std::vector<MomentKey> keys;
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
            MomentKey k = MomentKey::zero(3, 3);
            k.channel[static_cast<std::size_t>(a)] += 1;
            k.channel[static_cast<std::size_t>(b)] += 1;
            keys.push_back(k);
        }
    auto table = central_moments(obj, keys);

    // independent covariance: direct two-pass arithmetic on doubles
    auto c = centroid(obj);
    for (const auto& key : keys) {
        int a = -1, b = -1;
        for (int i = 0; i < 3; ++i) {
            if (key.channel[static_cast<std::size_t>(i)] >= 1 && a < 0) a = i;
            if (key.channel[static_cast<std::size_t>(i)] == 2) b = i;
            else if (key.channel[static_cast<std::size_t>(i)] == 1 && i != a) b = i;
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < obj.point_count(); ++i)
            sum += obj.weight(i) *
                   (obj.channels(i)[static_cast<std::size_t>(a)] - c.channel[static_cast<std::size_t>(a)]) *
                   (obj.channels(i)[static_cast<std::size_t>(b)] - c.channel[static_cast<std::size_t>(b)]);
        CHECK(table[key] == doctest::Approx(sum).epsilon(1e-10));
    }
}

TEST_CASE("central moments are translation invariant") {
    auto obj = synth_object(3, 3, 80, 3);
    std::vector<double> coords = obj.coord_data();
    std::vector<double> channels = obj.channel_data();
    for (std::size_t i = 0; i < obj.point_count(); ++i) {
        coords[i * 3 + 0] += 17.0;
        coords[i * 3 + 1] -= 4.5;
        coords[i * 3 + 2] += 0.25;
        channels[i * 3 + 0] += 9.0;
        channels[i * 3 + 2] -= 2.0;
    }
    ObjectMN shifted(3, 3, std::move(coords), std::move(channels), obj.weight_data());

    std::vector<MomentKey> keys;
    for (const char* digits : {"200000", "110000", "201100", "000220", "111111", "300300"})
        keys.push_back(golden::key(digits, 3, 3));
    auto a = central_moments(obj, keys);
    auto b = central_moments(shifted, keys);
    for (const auto& k : keys)
        CHECK(b[k] == doctest::Approx(a[k]).epsilon(1e-10));
}

TEST_CASE("odd-axis keys vanish on a mirror-symmetric cloud") {
    auto base = synth_object(3, 3, 60, 5);
    std::vector<double> coords, channels;
    for (std::size_t i = 0; i < base.point_count(); ++i) {
        for (int s = 0; s < 2; ++s) {
            coords.push_back(s ? -base.coords(i)[0] : base.coords(i)[0]);
            coords.push_back(base.coords(i)[1]);
            coords.push_back(base.coords(i)[2]);
            for (int a = 0; a < 3; ++a) channels.push_back(base.channels(i)[static_cast<std::size_t>(a)]);
        }
    }
    ObjectMN sym(3, 3, std::move(coords), std::move(channels));

    std::vector<MomentKey> odd, even;
    for (const char* digits : {"100100", "101000", "300000", "110011"})
        odd.push_back(golden::key(digits, 3, 3));
    for (const char* digits : {"200000", "000200"}) even.push_back(golden::key(digits, 3, 3));
    std::vector<MomentKey> all = odd;
    all.insert(all.end(), even.begin(), even.end());
    auto table = central_moments(sym, all);
    double scale = std::abs(table[even[0]]) + std::abs(table[even[1]]);
    for (const auto& k : odd) CHECK(std::abs(table[k]) <= 1e-9 * scale);
    for (const auto& k : even) CHECK(std::abs(table[k]) > 1e-6);
}

TEST_CASE("moments are linear in the weights") {
    auto obj = synth_object(3, 3, 50, 9);
    std::vector<double> doubled(obj.point_count(), 2.0);
    ObjectMN heavy(3, 3, obj.coord_data(), obj.channel_data(), doubled);
    std::vector<MomentKey> keys = {golden::key("200000", 3, 3), golden::key("110011", 3, 3),
                                   golden::key("000202", 3, 3)};
    auto a = central_moments(obj, keys);
    auto b = central_moments(heavy, keys);
    for (const auto& k : keys) CHECK(b[k] == doctest::Approx(2.0 * a[k]).epsilon(1e-12));
}

TEST_CASE("prescaling rescales moments like a diagonal map") {
    auto obj = synth_object(2, 2, 40, 13);
    std::vector<MomentKey> keys = {golden::key("2000", 2, 2)};
    MomentOptions scaled;
    scaled.prescale = true;
    auto plain = central_moments(obj, keys);
    auto pre = central_moments(obj, keys, scaled);
    // max-abs of centered x
    auto c = centroid(obj);
    double mx = 0.0;
    for (std::size_t i = 0; i < obj.point_count(); ++i)
        mx = std::max(mx, std::abs(obj.coords(i)[0] - c.spatial[0]));
    CHECK(pre[keys[0]] == doctest::Approx(plain[keys[0]] / (mx * mx)).epsilon(1e-9));
}
