#pragma once

#include <cstdint>
#include <limits>

namespace cochromatic {

/// Counter-based, splittable 64-bit generator.
///
/// Output number i of a stream with key K is mix64(K + i * 0x9E3779B97F4A7C15),
/// i.e. SplitMix64 addressed by counter. A stream is a pure function of its key,
/// so results never depend on how work is scheduled across threads.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed) noexcept;

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Value at an arbitrary counter position; does not advance the stream.
    result_type at(std::uint64_t counter) const noexcept;

    /// Independent child stream identified by `stream_id`.
    CounterRng split(std::uint64_t stream_id) const noexcept;

    /// Uniform integer in [0, bound), bound > 0 (Lemire's unbiased method).
    std::uint64_t bounded(std::uint64_t bound) noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    CounterRng(std::uint64_t key, std::uint64_t counter, bool) noexcept : key_(key), counter_(counter) {}

    std::uint64_t key_;
    std::uint64_t counter_;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

/// Per-sample seed: mix of (seed, n, sample_index). Stable across platforms and runs.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t sample_index) noexcept;

} // namespace cochromatic
