#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace cardbalance {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Order-sensitive combination of seed components into one 64-bit seed.
/// Used to derive per-game and per-individual streams so results never
/// depend on execution order.
constexpr std::uint64_t stable_hash(std::initializer_list<std::uint64_t> parts) noexcept
{
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto p : parts) {
        h = mix64(h ^ mix64(p));
    }
    return h;
}

constexpr std::uint64_t fnv1a(std::string_view text) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline int uniform_int(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

} // namespace cardbalance
