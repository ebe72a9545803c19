#ifndef ZIGZAG_RNG_HPP
#define ZIGZAG_RNG_HPP

#include <cmath>
#include <cstdint>

namespace zigzag {

/// xoshiro256++ with splitmix64 seeding. Replica streams derive from
/// (seed, replica index), so replicas can run in any order or in parallel
/// and still reproduce bit-identical trajectories.
class Rng {
public:
    Rng() : Rng(0, 0) {}

    Rng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        for (auto* w : {&s0_, &s1_, &s2_, &s3_}) *w = splitmix64(z);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s0_ + s3_, 23) + s0_;
        const std::uint64_t t = s1_ << 17;
        s2_ ^= s0_;
        s3_ ^= s1_;
        s1_ ^= s2_;
        s0_ ^= s3_;
        s2_ ^= t;
        s3_ = rotl(s3_, 45);
        return result;
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Exponential with the given rate.
    double exponential(double rate) { return -std::log1p(-u01()) / rate; }

    /// Uniform on {+1, -1}.
    int pm1() { return (next_u64() >> 63) ? 1 : -1; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& z) {
        z += 0x9e3779b97f4a7c15ULL;
        std::uint64_t r = z;
        r = (r ^ (r >> 30)) * 0xbf58476d1ce4e5b9ULL;
        r = (r ^ (r >> 27)) * 0x94d049bb133111ebULL;
        return r ^ (r >> 31);
    }

    std::uint64_t s0_, s1_, s2_, s3_;
};

} // namespace zigzag

#endif
