#ifndef TAMECHROMA_RNG_HPP
#define TAMECHROMA_RNG_HPP

#include <cstdint>

namespace tamechroma {

// SplitMix64 in counter mode: output i is a pure function of (seed, i), so
// sampling is reproducible across platforms and parallel batches can derive
// their streams as seed ^ batch index.
struct CounterRng {
    std::uint64_t seed;
    std::uint64_t counter = 0;

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t at(std::uint64_t i) const {
        return mix(seed + i * 0x9E3779B97F4A7C15ULL);
    }
    std::uint64_t next() { return at(counter++); }
    // uniform in [0,1) with 53 random bits
    double next_u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // uniform in [0, bound); bound > 0. Modulo bias is < bound/2^64.
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }
};

} // namespace tamechroma

#endif
