#pragma once

#include <cstdint>

namespace avs {

// Self-contained xoshiro256** stream. We avoid <random> engines/distributions
// so that seeded runs produce identical streams on every platform and
// standard library; golden tests and episode logs depend on that.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& w : state_) w = splitmix64(x);
    }

    // Independent substream derived from (seed, stream id). Used to hand each
    // simulation / episode its own stream regardless of execution order.
    static Rng derive(uint64_t seed, uint64_t stream) {
        uint64_t x = seed;
        uint64_t a = splitmix64(x);
        x ^= 0x9e3779b97f4a7c15ULL * (stream + 1);
        return Rng(a ^ splitmix64(x));
    }

    uint64_t next_u64() {
        uint64_t* s = state_;
        const uint64_t result = rotl(s[1] * 5, 7) * 9;
        const uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // Unbiased integer in [0, n). Lemire's multiply-shift with rejection.
    uint64_t bounded(uint64_t n) {
        __uint128_t m = (__uint128_t)next_u64() * n;
        uint64_t lo = (uint64_t)m;
        if (lo < n) {
            uint64_t t = (0 - n) % n;
            while (lo < t) {
                m = (__uint128_t)next_u64() * n;
                lo = (uint64_t)m;
            }
        }
        return (uint64_t)(m >> 64);
    }

    int uniform_int(int n) { return (int)bounded((uint64_t)n); }

    // Uniform double in [0, 1).
    double uniform_double() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform_double() < p; }

  private:
    static uint64_t splitmix64(uint64_t& x) {
        uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    uint64_t state_[4];
};

} // namespace avs
