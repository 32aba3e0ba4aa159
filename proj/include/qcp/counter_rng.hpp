#pragma once

#include <cstdint>

namespace qcp {

__extension__ using uint128 = unsigned __int128;

/// SplitMix64 finalizer: a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of one trial, a pure function of (base_seed, trial index).
constexpr std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) noexcept {
    return mix64(base_seed ^ mix64(trial ^ 0xD1B54A32D192ED03ULL));
}

/// Counter-based generator: draw number d of a stream with seed s is mix64(s, d).
/// Any two streams with different seeds are independent of scheduling.
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    constexpr std::uint64_t next_u64() noexcept {
        return mix64(seed_ ^ mix64(counter_++ * 0x9E3779B97F4A7C15ULL));
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    constexpr double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), bound > 0.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        return static_cast<std::uint64_t>((static_cast<uint128>(next_u64()) * bound) >> 64);
    }

    [[nodiscard]] constexpr std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] constexpr std::uint64_t draws() const noexcept { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace qcp
