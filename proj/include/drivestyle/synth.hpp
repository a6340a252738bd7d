#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "drivestyle/preprocess.hpp"

namespace drivestyle {

enum class Profile { calm, average, racy, noisy };

const char* to_string(Profile p) noexcept;
Profile profile_from_string(std::string_view text);

struct ProfileSpec {
    Profile profile = Profile::average;
    std::size_t count = 1;
    std::size_t length = 20;         // samples, within [10, 24]
    std::int64_t sample_interval = 1;  // seconds
    std::uint64_t seed = 42;

    void validate() const;
};

/// Standard deviation of the per-interval acceleration for a profile (m/s^2).
double acceleration_sigma(Profile p) noexcept;

/// One planar 1-D trajectory along x. Pattern `index` draws from the substream
/// mix_seed(spec.seed, index); the result depends on nothing else.
///
/// calm: slow linear acceleration ramp plus small noise. average/racy: i.i.d.
/// accelerations. noisy: an average trajectory with 1-2 lateral (y) spikes of
/// 50-200 m at interior samples. Speed stays within [3, 30] m/s.
MovementPattern generate_pattern(const ProfileSpec& spec, std::size_t index, std::string id = {});

struct SyntheticSet {
    std::vector<MovementPattern> patterns;
    std::map<std::string, Profile> truth;
};

/// All patterns of several specs, ids `synth#NNNN` numbered across specs.
SyntheticSet generate_set(const std::vector<ProfileSpec>& specs);

/// 100 calm + 100 average + 100 racy + 30 noisy patterns of 20 samples at 1 s.
SyntheticSet generate_benchmark(std::uint64_t seed = 42);

}  // namespace drivestyle
