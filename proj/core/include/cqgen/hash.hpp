#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace cqgen {

// FNV-1a, 64-bit. Used for cache keys, request fingerprints and the mock
// embedder's n-gram projection. Stable across platforms, unlike std::hash.
constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

constexpr std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = kFnvOffset) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

constexpr std::uint64_t fnv1a64_mix(std::uint64_t value, std::uint64_t seed = kFnvOffset) {
    std::uint64_t h = seed;
    for (int i = 0; i < 8; ++i) {
        h ^= (value >> (8 * i)) & 0xffu;
        h *= kFnvPrime;
    }
    return h;
}

std::string to_hex(std::uint64_t value);

}  // namespace cqgen
