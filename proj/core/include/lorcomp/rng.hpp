#ifndef LORCOMP_RNG_HPP
#define LORCOMP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace lorcomp::rng {

// Deterministic random stream. The engine (mt19937_64) has a sequence fixed by
// the standard; the variate mappings below are implemented here rather than
// with std:: distributions, whose output is implementation-defined. Same seed,
// same platform-independent stream.
class Stream {
public:
    explicit Stream(std::uint64_t seed)
        : eng_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t bits() { return eng_(); }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        if (n <= 1) return 0;
        const std::uint64_t span = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return static_cast<std::size_t>(v % span);
    }

    // Poisson count by summing exponential inter-arrival times; O(mean).
    std::size_t poisson(double mean) {
        if (mean <= 0) return 0;
        double sum = 0.0;
        std::size_t k = 0;
        for (;;) {
            double u = uniform();
            sum += -std::log1p(-u);
            if (sum >= mean) return k;
            ++k;
        }
    }

private:
    std::mt19937_64 eng_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Stable sub-seed derivation: one base seed fans out into independent,
// reproducible streams keyed by a tag and an index.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                                 std::uint64_t k = 0) {
    std::uint64_t h = 0xcbf29ce484222325ull; // FNV-1a
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return splitmix64(base ^ splitmix64(h ^ splitmix64(k)));
}

} // namespace lorcomp::rng

#endif
