#pragma once

#include <cstdint>

namespace spintop {

// Counter-based random streams: every variate is a pure function of
// (seed, stream, counter), so disorder realizations are reproducible across
// runs and thread counts and any bond/trial can be regenerated in isolation.

namespace rng {

// SplitMix64 finalizer; full-period bijective mixer on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t at(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
{
    return mix64(mix64(mix64(seed) ^ stream) ^ counter);
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
{
    return double(at(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Derive a sub-seed, e.g. one per Monte-Carlo trial.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
{
    return at(seed, stream, index);
}

// Stream tags used across the project.
enum Stream : std::uint64_t {
    bond_signs = 1,
    trial = 2,
    perturbation = 3,
};

}  // namespace rng
}  // namespace spintop
