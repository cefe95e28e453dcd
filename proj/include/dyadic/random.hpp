#pragma once

#include <cstdint>
#include <random>

namespace dyadic {

// splitmix64 step; used only to derive well-separated per-sample seeds from
// (ensemble seed, sample index) so samples are reproducible individually.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline uint64_t sample_seed(uint64_t seed, uint64_t index) {
    uint64_t state = seed;
    uint64_t mixed = splitmix64(state);
    state = mixed ^ index;
    return splitmix64(state);
}

// mt19937_64 is fully specified by the standard, so streams are identical
// across platforms; doubles come from the top 53 bits.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; } // [0, 1)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    int64_t uniform_int(int64_t lo, int64_t hi) { // inclusive range
        const uint64_t span = uint64_t(hi - lo) + 1;
        // Rejection sampling keeps the draw exactly uniform.
        const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return lo + int64_t(r % span);
    }

private:
    std::mt19937_64 eng_;
};

} // namespace dyadic
