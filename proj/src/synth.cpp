#include "drivestyle/synth.hpp"

#include <algorithm>
#include <cstdio>

#include "drivestyle/error.hpp"
#include "drivestyle/random.hpp"

namespace drivestyle {
namespace {

constexpr double kMinSpeed = 3.0;
constexpr double kMaxSpeed = 30.0;
// 2008-02-02 00:00:00 UTC+8
constexpr std::int64_t kEpochBase = 1201881600;
constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

}  // namespace

const char* to_string(Profile p) noexcept {
    switch (p) {
        case Profile::calm: return "calm";
        case Profile::average: return "average";
        case Profile::racy: return "racy";
        case Profile::noisy: return "noisy";
    }
    return "?";
}

Profile profile_from_string(std::string_view text) {
    for (auto p : {Profile::calm, Profile::average, Profile::racy, Profile::noisy}) {
        if (text == to_string(p)) return p;
    }
    throw InvalidArgument("unknown profile '" + std::string(text) + "'");
}

void ProfileSpec::validate() const {
    if (length < 10 || length > 24) throw InvalidArgument("profile length must lie in [10, 24]");
    if (sample_interval <= 0) throw InvalidArgument("sample interval must be positive");
}

double acceleration_sigma(Profile p) noexcept {
    switch (p) {
        case Profile::calm: return 0.05;
        case Profile::average: return 0.5;
        case Profile::racy: return 2.0;
        case Profile::noisy: return 0.5;
    }
    return 0.0;
}

MovementPattern generate_pattern(const ProfileSpec& spec, std::size_t index, std::string id) {
    spec.validate();
    Xoshiro256ss rng(mix_seed(spec.seed, index));
    const std::size_t n = spec.length;
    const auto dt = static_cast<double>(spec.sample_interval);
    const double sigma = acceleration_sigma(spec.profile);

    MovementPattern p;
    p.id = id.empty() ? std::string(to_string(spec.profile)) + "#" + std::to_string(index) : std::move(id);
    p.coord_mode = CoordMode::planar;
    p.t.resize(n);
    p.x.resize(n);
    p.y.assign(n, 0.0);

    // Calm drivers follow a gentle acceleration ramp centred on the pattern.
    const double ramp = spec.profile == Profile::calm ? (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.06, 0.1) : 0.0;
    double v = rng.uniform(8.0, 15.0);
    const std::int64_t t0 = kEpochBase + static_cast<std::int64_t>(index) * 3600;
    p.t[0] = t0;
    p.x[0] = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double centred = (static_cast<double>(i) - 0.5 * static_cast<double>(n - 2)) * dt;
        double a = ramp * centred + sigma * rng.normal();
        double v_next = v + a * dt;
        if (v_next < kMinSpeed || v_next > kMaxSpeed) {
            a = -a;
            v_next = v + a * dt;
            if (v_next < kMinSpeed || v_next > kMaxSpeed) {
                a = 0.0;
                v_next = v;
            }
        }
        p.t[i + 1] = t0 + static_cast<std::int64_t>(i + 1) * spec.sample_interval;
        p.x[i + 1] = p.x[i] + 0.5 * (v + v_next) * dt;
        v = v_next;
    }

    if (spec.profile == Profile::noisy) {
        const std::size_t spikes = rng.coin() ? 2 : 1;
        std::size_t first = kNoIndex;
        for (std::size_t s = 0; s < spikes; ++s) {
            std::size_t at;
            do {
                at = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(n) - 2));
            } while (at == first);
            first = at;
            p.y[at] += (rng.coin() ? 1.0 : -1.0) * rng.uniform(50.0, 200.0);
        }
    }
    return p;
}

SyntheticSet generate_set(const std::vector<ProfileSpec>& specs) {
    SyntheticSet set;
    std::size_t serial = 0;
    for (const auto& spec : specs) {
        for (std::size_t i = 0; i < spec.count; ++i) {
            char id[32];
            std::snprintf(id, sizeof id, "synth#%04zu", serial++);
            set.truth.emplace(id, spec.profile);
            set.patterns.push_back(generate_pattern(spec, i, id));
        }
    }
    return set;
}

SyntheticSet generate_benchmark(std::uint64_t seed) {
    std::vector<ProfileSpec> specs;
    const std::pair<Profile, std::size_t> blocks[] = {
        {Profile::calm, 100}, {Profile::average, 100}, {Profile::racy, 100}, {Profile::noisy, 30}};
    std::uint64_t block = 0;
    for (const auto& [profile, count] : blocks) {
        specs.push_back(ProfileSpec{profile, count, 20, 1, mix_seed(seed, ++block)});
    }
    return generate_set(specs);
}

}  // namespace drivestyle
