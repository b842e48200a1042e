#pragma once

#include <array>
#include <cstdint>

namespace sepcomp {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used for seeding and for
/// deriving independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix64(std::uint64_t x);

/// Sub-seed for cell (a, b) of an experiment grid: seed XOR mix(a, b).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

/// xoshiro256** 1.0 (Blackman, Vigna) seeded through SplitMix64.
///
/// Variates are produced by fixed algorithms written here rather than the
/// <random> distributions, whose output is implementation-defined, so a seed
/// yields the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal, Marsaglia polar method.
    double normal();
    /// +1 or -1 with equal probability.
    double rademacher();
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

private:
    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace sepcomp
