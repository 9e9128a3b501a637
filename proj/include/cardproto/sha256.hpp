#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace cardproto {

/// Incremental SHA-256 (FIPS 180-4).
class Sha256 {
 public:
  Sha256();

  void update(std::span<const std::uint8_t> data);

  /// Finalizes and returns the 32-octet digest. The instance must not be
  /// reused afterwards.
  std::array<std::uint8_t, 32> finish();

 private:
  void process_block(const std::uint8_t* block);

  std::array<std::uint32_t, 8> state_;
  std::array<std::uint8_t, 64> buffer_{};
  std::size_t buffered_ = 0;
  std::uint64_t total_bytes_ = 0;
};

/// One-shot convenience wrapper.
std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);

}  // namespace cardproto
