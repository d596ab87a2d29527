// SPDX-License-Identifier: Apache-2.0

#ifndef SINYAL_RNG_HPP
#define SINYAL_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace sinyal {

// Seeded generator with platform-independent output. The engine is
// std::mt19937_64 (its raw sequence is fixed by the standard); bounded draws
// use rejection sampling instead of std::uniform_int_distribution, whose
// output differs between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        // reject the tail that would bias the modulus
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit_real() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Fisher-Yates shuffle, deterministic for a fixed seed.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

namespace detail {

inline constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace detail

/// Stage-named sub-seed so every pipeline stage draws from its own stream
/// while all randomness still flows from the single config seed.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view stage) {
    return detail::splitmix64(seed ^ detail::fnv1a64(stage));
}

} // namespace sinyal

#endif
