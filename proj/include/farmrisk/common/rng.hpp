#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace farmrisk {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Derives an independent stream seed from a parent seed and a tag. Every
// random stream in the project comes from this so that sessions, rounds and
// agents never share state.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag);
std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag);

Rng make_rng(std::uint64_t seed);

// Uniform double in [0, 1) from the top 53 bits.
double uniform01(Rng& rng);

// Uniform integer in [0, bound) without modulo bias.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// Standard normal via Box-Muller on uniform01; portable across standard
// libraries, unlike std::normal_distribution.
double standard_normal(Rng& rng);

}  // namespace farmrisk
