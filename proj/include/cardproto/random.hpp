#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>

namespace cardproto {

/// Deterministic generator behind all randomness in the lab. mt19937_64 is
/// fully specified by the standard, so a seed reproduces the same octet
/// stream on every platform.
using Rng = std::mt19937_64;

/// Fills `out` from raw engine words (big-endian per word). Raw words are
/// used instead of <random> distributions, whose output is
/// implementation-defined and would break cross-platform transcripts.
inline void draw_bytes(Rng& rng, std::span<std::uint8_t> out) {
  std::size_t i = 0;
  while (i < out.size()) {
    std::uint64_t word = rng();
    for (int shift = 56; shift >= 0 && i < out.size(); shift -= 8) {
      out[i++] = static_cast<std::uint8_t>(word >> shift);
    }
  }
}

template <std::size_t N>
std::array<std::uint8_t, N> draw_array(Rng& rng) {
  std::array<std::uint8_t, N> out{};
  draw_bytes(rng, out);
  return out;
}

}  // namespace cardproto
