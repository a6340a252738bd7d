#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "drivestyle/error.hpp"
#include "drivestyle/features.hpp"
#include "drivestyle/kinematics.hpp"
#include "drivestyle/random.hpp"
#include "drivestyle/synth.hpp"

using namespace drivestyle;

TEST_CASE("SplitMix64 reference outputs") {
    SplitMix64 sm(1234567);
    const std::uint64_t expected[] = {6457827717110365317ULL, 3203168211198807973ULL, 9817491932198370423ULL,
                                      4593380528125082431ULL, 16408922859458223821ULL};
    for (auto e : expected) CHECK(sm.next() == e);
}

TEST_CASE("xoshiro256** reference outputs") {
    Xoshiro256ss rng(42);
    const std::uint64_t expected[] = {1546998764402558742ULL, 6990951692964543102ULL, 12544586762248559009ULL,
                                      17057574109182124193ULL, 18295552978065317476ULL};
    for (auto e : expected) CHECK(rng.next() == e);
}

TEST_CASE("random helpers stay in range") {
    Xoshiro256ss rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const auto k = rng.uniform_int(-3, 3);
        CHECK(k >= -3);
        CHECK(k <= 3);
        const double z = rng.normal();
        CHECK(std::abs(z) <= 6.0);
    }
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
}

TEST_CASE("generated patterns are deterministic and valid") {
    for (auto profile : {Profile::calm, Profile::average, Profile::racy, Profile::noisy}) {
        for (std::size_t len : {10, 17, 24}) {
            const ProfileSpec spec{profile, 1, len, 2, 99};
            const auto a = generate_pattern(spec, 3);
            const auto b = generate_pattern(spec, 3);
            CHECK(a == b);
            CHECK(a.size() == len);
            CHECK(check_pattern(a).empty());
            for (std::size_t i = 1; i < a.size(); ++i) {
                CHECK(a.t[i] - a.t[i - 1] == 2);
                CHECK(a.x[i] > a.x[i - 1]);
            }
            CHECK(generate_pattern(spec, 4) != a);
        }
    }
    CHECK_THROWS_AS(generate_pattern(ProfileSpec{Profile::calm, 1, 9, 1, 1}, 0), InvalidArgument);
    CHECK_THROWS_AS(generate_pattern(ProfileSpec{Profile::calm, 1, 20, 0, 1}, 0), InvalidArgument);
}

TEST_CASE("speed of clean profiles stays within bounds") {
    for (std::size_t i = 0; i < 200; ++i) {
        for (auto profile : {Profile::calm, Profile::average, Profile::racy}) {
            const auto p = generate_pattern(ProfileSpec{profile, 1, 24, 1, 5}, i);
            for (double v : speed_series(p).values) {
                CHECK(v >= 3.0 - 1e-9);
                CHECK(v <= 30.0 + 1e-9);
            }
        }
    }
}

TEST_CASE("noisy patterns carry a jerk spike well above their typical jerk") {
    for (std::size_t i = 0; i < 100; ++i) {
        const auto p = generate_pattern(ProfileSpec{Profile::noisy, 1, 20, 1, 11}, i);
        auto jerks = kinematics_of(p).jerk.values;
        for (auto& j : jerks) j = std::abs(j);
        auto sorted = jerks;
        std::sort(sorted.begin(), sorted.end());
        const double median = 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
        CHECK(sorted.back() > 10.0 * median);
    }
}

TEST_CASE("benchmark composition") {
    const auto set = generate_benchmark(42);
    REQUIRE(set.patterns.size() == 330);
    REQUIRE(set.truth.size() == 330);
    std::size_t counts[4] = {};
    for (const auto& [id, profile] : set.truth) ++counts[static_cast<int>(profile)];
    CHECK(counts[0] == 100);
    CHECK(counts[1] == 100);
    CHECK(counts[2] == 100);
    CHECK(counts[3] == 30);
    for (const auto& p : set.patterns) {
        CHECK(set.truth.count(p.id) == 1);
        CHECK(check_pattern(p).empty());
    }
    CHECK(generate_benchmark(42).patterns == set.patterns);
    CHECK(generate_benchmark(43).patterns != set.patterns);
}

TEST_CASE("generated patterns pass through preprocessing unchanged") {
    const auto set = generate_benchmark(7);
    for (std::size_t i = 0; i < set.patterns.size(); i += 11) {
        const auto record = pattern_to_record(set.patterns[i]);
        const auto result = preprocess_pipeline(std::span(&record, 1));
        REQUIRE(result.patterns.size() == 1);
        CHECK(result.patterns[0].x == set.patterns[i].x);
        CHECK(result.patterns[0].y == set.patterns[i].y);
        CHECK(result.patterns[0].t == set.patterns[i].t);
    }
}

TEST_CASE("profile names round-trip") {
    for (auto p : {Profile::calm, Profile::average, Profile::racy, Profile::noisy}) {
        CHECK(profile_from_string(to_string(p)) == p);
    }
    CHECK_THROWS_AS(profile_from_string("sporty"), InvalidArgument);
}
