#pragma once

#include <cstdint>
#include <limits>

namespace coopsearch {

// SplitMix64 finalizer. Used both as the generator's output function and to
// hash (base_seed, counter) pairs into independent stream origins.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    std::uint64_t state_;
};

/// Origin of the stream for trial `counter` under `base_seed`.
///
/// Streams start at hashed positions of the 2^64 cycle, so trial k's stream
/// does not depend on how many draws trial k-1 consumed or which worker ran it.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t counter) noexcept {
    return mix64(mix64(base_seed) + mix64(counter ^ 0xD1B54A32D192ED03ULL));
}

}  // namespace coopsearch
