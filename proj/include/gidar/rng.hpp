#pragma once

#include <cstdint>

namespace gidar::numerics {

/// 64-bit finalizer from SplitMix64.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/**
 * Counter-based random stream.
 *
 * The value at position `counter` of stream (master_seed, stream_index) is a
 * pure function of those three integers, so a batch of draws can be split
 * across threads in any order and still reproduce the serial sequence.
 */
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept;

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_index() const noexcept { return stream_index_; }
    std::uint64_t counter() const noexcept { return counter_; }

    /// Independent child stream; children of distinct indices do not overlap.
    RngStream derive(std::uint64_t child_index) const noexcept;

    std::uint64_t bits_at(std::uint64_t position) const noexcept;

    /// Uniform in the open interval (0, 1), 52-bit grid; uniform_at + complement_at == 1 exactly.
    double uniform_at(std::uint64_t position) const noexcept;

    /// 1 - uniform_at(position), computed without cancellation.
    double complement_at(std::uint64_t position) const noexcept;

    std::uint64_t next_bits() noexcept { return bits_at(counter_++); }
    double next_uniform() noexcept { return uniform_at(counter_++); }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace gidar::numerics
