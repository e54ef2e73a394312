#ifndef SPREADNET_RNG_HPP
#define SPREADNET_RNG_HPP

#include <cstdint>

namespace spreadnet {

// splitmix64 finalizer (Steele, Lea & Flood 2014). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Folds one more value into a seed. Used to derive independent, reproducible
// streams from (master seed, index...) tuples: the derivation is pure
// arithmetic, so any sub-stream can be recomputed in isolation without
// replaying the ones before it.
constexpr std::uint64_t seed_combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h ^ (mix64(v) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2)));
}

// SplitMix64 generator. Counter-based: the state advances by a fixed odd
// increment and the output is a bijective mix of it, so each seed names a
// disjoint position in one global sequence.
//
// This is the project's only source of randomness. The algorithm and its
// constants are fixed: changing them invalidates every frozen expected value
// in the test suite and every published result file.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // True with probability p. Always consumes exactly one draw.
    bool bernoulli(double p) { return next_double() < p; }

    // Uniform integer in [0, bound). bound must be nonzero. Uses rejection to
    // avoid modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0ull - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace spreadnet

#endif  // SPREADNET_RNG_HPP
