#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace genusembed {

/// Independent randomness streams derived from one user seed.
enum class Stream : std::uint64_t {
    partitions = 1,
    lipschitz = 2,
    pair_sample = 3,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Portable generator: std::mt19937_64 (its output sequence is fixed by the
/// standard) seeded through splitmix64. All derived quantities are computed
/// by hand rather than through <random> distributions, whose algorithms are
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    static Rng stream(std::uint64_t seed, Stream s) {
        return Rng(splitmix64(seed) ^ splitmix64(0xd1b54a32d192ed03ULL * static_cast<std::uint64_t>(s)));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform dyadic rational in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n > 0, by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = (~0ULL) - ((~0ULL) % n);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    /// Fisher-Yates permutation of {0, ..., n-1}.
    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        for (std::size_t i = n; i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace genusembed
