#pragma once

#include <cstdint>
#include <limits>

namespace waitlaw {

// splitmix64; used to expand a user seed into generator state and to derive
// independent per-sample seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Seed for the i-th sample of a run. Streams built from distinct indices are
// independent for all practical purposes and may be driven in parallel.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t s = seed ^ (0xA0761D6478BD642Full + index * 0xE7037ED1A0B428DBull);
    std::uint64_t a = splitmix64_next(s);
    std::uint64_t b = splitmix64_next(s);
    return a ^ (b << 1);
}

// xoshiro256++ (Blackman/Vigna). Small, fast, seedable; state expanded from a
// 64-bit seed via splitmix64.
class xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit xoshiro256pp(std::uint64_t seed = 0) noexcept { reseed(seed); }

    void reseed(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64_next(sm);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<std::uint64_t>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on the open interval (0,1); 53 significant bits, offset half an
    // ulp so 0 and 1 are never returned. Independent of platform libm.
    double uniform_open01() noexcept {
        return (double)((*this)() >> 11) * (1.0 / 9007199254740992.0)
             + (0.5 / 9007199254740992.0);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

} // namespace waitlaw
