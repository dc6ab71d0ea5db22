#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "blindpsi/angle.hpp"

namespace blindpsi {

// splitmix64 finalizer; also used to derive independent substreams from a
// master seed so that runs are reproducible regardless of execution order.
inline uint64_t mix64(uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t mix64(uint64_t a, uint64_t b) { return mix64(a ^ mix64(b)); }

class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t u64() { return engine_(); }

    int bit() { return int(engine_() & 1u); }

    Angle8 angle() { return Angle8(int(engine_() & 7u)); }

    // uniform integer in [0, n)
    uint32_t below(uint32_t n)
    {
        std::uniform_int_distribution<uint32_t> d(0, n - 1);
        return d(engine_);
    }

    double real()
    {
        std::uniform_real_distribution<double> d(0.0, 1.0);
        return d(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Named substream: rng for (seed, tag0, tag1, ...). Streams with different
// tags are independent for all practical purposes.
inline Rng substream(uint64_t seed, std::initializer_list<uint64_t> tags)
{
    uint64_t s = mix64(seed);
    for (uint64_t t : tags) s = mix64(s, t);
    return Rng(s);
}

}  // namespace blindpsi
