#pragma once

#include <array>
#include <cstdint>

namespace drivestyle {

/// SplitMix64 (Steele, Lea & Flood). Used for seeding and stream derivation.
/// From seed 1234567 the first outputs are 6457827717110365317,
/// 3203168211198807973, 9817491932198370423.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Derives an independent sub-seed from a master seed and an index.
constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) noexcept {
    SplitMix64 sm(master ^ (index * 0xD1B54A32D192ED03ULL));
    sm.next();
    return sm.next();
}

/// xoshiro256** 1.0 (Blackman & Vigna), state filled from SplitMix64(seed).
///
/// Everything drawn from it is built from integer operations and exactly
/// rounded double arithmetic, so streams are identical on every platform.
class Xoshiro256ss {
public:
    explicit constexpr Xoshiro256ss(std::uint64_t seed) noexcept : s_{} {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    constexpr std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi].
    constexpr std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    /// Approximately standard normal: Irwin-Hall sum of twelve uniforms minus 6.
    constexpr double normal() noexcept {
        double acc = 0.0;
        for (int i = 0; i < 12; ++i) acc += uniform();
        return acc - 6.0;
    }

    constexpr bool coin() noexcept { return (next() >> 63) != 0; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_;
};

}  // namespace drivestyle
