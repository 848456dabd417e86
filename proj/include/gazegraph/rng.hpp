#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gazegraph {

// Seeded draws go through these helpers instead of std distributions, whose
// output is implementation-defined. Keeps runs bit-reproducible.

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Unbiased uniform index in [0, n) via rejection sampling.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = n == 0 ? 0 : std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

/// FNV-1a, for deriving per-item seeds from string ids deterministically.
inline std::uint64_t fnv1a(std::string_view s, std::uint64_t seed = 14695981039346656037ULL) {
    std::uint64_t h = seed;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

/// Seed for per-image work derived from a base seed and the image id, so
/// results do not depend on processing order.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
    return fnv1a(tag, base ^ 0x9e3779b97f4a7c15ULL);
}

} // namespace gazegraph
