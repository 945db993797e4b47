#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace holarchy {

// Seed-stream derivation. Every randomized component draws from its own
// stream so that runs are independently re-creatable: stream ids are fixed
// constants, derive_seed(master, stream) is SplitMix64 over master^stream.
enum class SeedStream : std::uint64_t {
    Plans = 0x01,
    Placement = 0x02,
    Shuffle = 0x03,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, SeedStream stream) {
    return splitmix64(master ^ (static_cast<std::uint64_t>(stream) * 0xd6e8feb86659fd93ULL));
}

// Uniform integer in [0, n) by rejection; avoids the implementation-defined
// behavior of std::uniform_int_distribution.
inline std::uint64_t bounded_uint(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

// Uniform double in [0, 1) with 53-bit resolution.
inline double canonical_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal variate, Marsaglia polar method. Fixed algorithm so that
// a given seed yields the same stream on every platform.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * canonical_double(rng_) - 1.0;
            v = 2.0 * canonical_double(rng_) - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace holarchy
