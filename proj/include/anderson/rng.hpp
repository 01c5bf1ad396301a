#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace anderson::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer (Steele/Lea/Flood; Vigna's public-domain constants).
// Used as the mixing stage that derives independent per-site stream seeds
// from (base_seed, realization_index, site key).
inline constexpr std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stream key of a lattice site, folded over its coordinates. Keying on
// coordinates (rather than a cube-local flat index) makes the potential of a
// sub-box the literal restriction of the enclosing box's potential.
inline std::uint64_t site_key(std::span<const int> coords) {
    std::uint64_t k = static_cast<std::uint64_t>(coords.size());
    for (int c : coords)
        k = mix(k ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(c)));
    return k;
}

inline constexpr std::uint64_t stream_seed(std::uint64_t base_seed,
                                           std::uint64_t realization_index,
                                           std::uint64_t key) {
    return mix(mix(mix(base_seed) ^ realization_index) ^ key);
}

// xoshiro256** (Blackman/Vigna). One generator per stream; state expanded
// from the 64-bit stream seed through SplitMix64.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        std::uint64_t st = seed;
        for (auto& w : state_) w = mix(st++);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = kGolden;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Top 53 bits over 2^53, so every implementation of the scheme agrees
    // bit-exactly. Result is in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::array<std::uint64_t, 4> state_;
};

}  // namespace anderson::rng
