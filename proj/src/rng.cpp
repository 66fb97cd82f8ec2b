#include "gidar/rng.hpp"

namespace gidar::numerics {

namespace {
constexpr double kTwoPowMinus52 = 1.0 / 4503599627370496.0;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
    : master_seed_(master_seed),
      stream_index_(stream_index),
      key_(mix64(mix64(master_seed) ^ mix64(stream_index + 0x632BE59BD9B4E019ULL))) {}

RngStream RngStream::derive(std::uint64_t child_index) const noexcept {
    return RngStream(key_, child_index);
}

std::uint64_t RngStream::bits_at(std::uint64_t position) const noexcept {
    return mix64(key_ ^ mix64(position));
}

double RngStream::uniform_at(std::uint64_t position) const noexcept {
    const auto k = bits_at(position) >> 12;
    return (static_cast<double>(k) + 0.5) * kTwoPowMinus52;
}

double RngStream::complement_at(std::uint64_t position) const noexcept {
    const auto k = bits_at(position) >> 12;
    return (4503599627370496.0 - static_cast<double>(k) - 0.5) * kTwoPowMinus52;
}

}  // namespace gidar::numerics
