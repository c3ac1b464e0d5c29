#pragma once

// Per-trial random streams keyed by (seed, stream, trial). Each trial owns
// an independent xoshiro256** state derived through SplitMix64, so results
// do not depend on how trials are distributed over threads.

#include <array>
#include <cstdint>
#include <limits>

namespace vbl::rng {

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& s : state_) s = splitmix64(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() {
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

    /// Uniform on [0, 1) with 53 random bits.
    constexpr double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

constexpr Xoshiro256 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
    std::uint64_t s = seed;
    std::uint64_t key = splitmix64(s);
    s = key ^ stream;
    key = splitmix64(s);
    s = key ^ trial;
    return Xoshiro256(splitmix64(s));
}

}  // namespace vbl::rng
