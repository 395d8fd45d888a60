#pragma once

#include <cstdint>

namespace phtqc {

// splitmix64 finalizer; full-avalanche mix used for stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded by a splitmix64 chain over (seed, stream, salt).
// Each (seed, stream) pair yields an independent generator, so trials can
// run in any order on any number of threads without changing results.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t salt = 0) {
        std::uint64_t st = seed;
        st ^= splitmix64(st) + stream;
        st ^= splitmix64(st) + salt;
        for (auto& w : s_) w = splitmix64(st);
        // all-zero state is invalid for xoshiro; the chain cannot hit it
        // for every word simultaneously, but guard anyway
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next_u64() {
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

    // uniform in [0,1) with 53-bit resolution
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    // uniform integer in [0, bound) via rejection-free Lemire reduction
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

}  // namespace phtqc
