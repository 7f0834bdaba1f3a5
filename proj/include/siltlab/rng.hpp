#pragma once
// Deterministic RNG with cheap per-sample streams.
//
// Engine: xoshiro256++ seeded through splitmix64.  Stream derivation is the
// fixed mixing function
//     z0 = seed + (sample_index + 1) * 0x9E3779B97F4A7C15
//     state[i] = splitmix64(z0, i)
// so stream(seed, i) is O(1) and independent of thread scheduling: parallel
// and serial Monte-Carlo runs see identical per-sample draws.

#include <array>
#include <cmath>
#include <cstdint>

namespace siltlab {

inline uint64_t splitmix64_next(uint64_t& s) {
    uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class RngStream {
  public:
    static RngStream seeded(uint64_t seed) { return for_sample(seed, 0); }

    // Fixed documented mixing function (see header comment).
    static RngStream for_sample(uint64_t seed, uint64_t sample_index) {
        RngStream r;
        uint64_t z = seed + (sample_index + 1) * 0x9E3779B97F4A7C15ULL;
        for (auto& w : r.s_) w = splitmix64_next(z);
        if ((r.s_[0] | r.s_[1] | r.s_[2] | r.s_[3]) == 0) r.s_[0] = 1;
        return r;
    }

    uint64_t next() {
        auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in (0,1]: 53-bit mantissa, never 0 so log() is safe.
    double uniform01() {
        return double((next() >> 11) + 1) * 0x1.0p-53;
    }

    double exponential(double rate) { return -std::log(uniform01()) / rate; }

    // Box-Muller; the second deviate is cached inside the stream.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    // Unbiased integer in [0, n) by rejection on the top bits.
    uint64_t below(uint64_t n) {
        uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
        for (;;) {
            uint64_t v = next();
            if (v >= threshold) return v % n;
        }
    }

    // UniformRandomBitGenerator interface.
    using result_type = uint64_t;
    static constexpr uint64_t min() { return 0; }
    static constexpr uint64_t max() { return ~uint64_t(0); }
    uint64_t operator()() { return next(); }

  private:
    std::array<uint64_t, 4> s_{};
    bool have_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace siltlab
