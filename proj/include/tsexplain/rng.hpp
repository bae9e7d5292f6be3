#pragma once

#include <cmath>
#include <cstdint>

namespace tsexplain {

/// splitmix64; used to derive independent per-trial seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// xoshiro-free minimal PRNG with hand-rolled distributions. The standard
/// <random> distributions are not pinned across library implementations;
/// these are, which keeps benchmark outputs reproducible byte-for-byte.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(mix_seed(seed ^ 0x5851f42d4c957f2dULL)) {}

    std::uint64_t next_u64() {
        state_ = mix_seed(state_);
        return state_;
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    /// Standard normal via Box-Muller (no cached spare, so the stream
    /// position is a pure function of the call count).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    double normal(double mean, double std) { return mean + std * normal(); }

    bool coin() { return (next_u64() & 1ULL) != 0; }

  private:
    std::uint64_t state_;
};

}  // namespace tsexplain
