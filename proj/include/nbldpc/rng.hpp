// Seed derivation for reproducible Monte-Carlo runs. Every frame, sweep
// point and label draw gets its own seed hashed from a root seed, so results
// do not depend on scheduling or worker count.
#pragma once

#include <cstdint>
#include <random>

namespace nbldpc {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index = 0) {
    return mix64(mix64(mix64(root) ^ stream) ^ index);
}

// Registry of stream tags; one place so two modules never reuse a value.
namespace streams {
constexpr std::uint64_t peg = 1;
constexpr std::uint64_t labels = 2;
constexpr std::uint64_t frames = 3;
constexpr std::uint64_t entropy = 4;
constexpr std::uint64_t source = 5;
} // namespace streams

using rng_engine = std::mt19937_64;

// Unbiased enough for tie-breaking; avoids the unspecified layout of
// std::uniform_int_distribution so constructions replay identically.
inline std::size_t pick_index(rng_engine& eng, std::size_t count) {
    return static_cast<std::size_t>(eng() % count);
}

} // namespace nbldpc
