#include "cardproto/crypto.hpp"

#include <limits>
#include <stdexcept>

#include "cardproto/sha256.hpp"

namespace cardproto {
namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> data) {
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0f]);
  }
  return out;
}

std::optional<Bytes> bytes_from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) return std::nullopt;
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = hex_nibble(hex[i]);
    const int lo = hex_nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

std::string Digest::hex() const { return to_hex(bytes); }

std::optional<Digest> Digest::from_hex(std::string_view hex) {
  const auto raw = bytes_from_hex(hex);
  if (!raw || raw->size() != kDigestBytes) return std::nullopt;
  Digest d;
  std::copy(raw->begin(), raw->end(), d.bytes.begin());
  return d;
}

Digest operator^(const Digest& a, const Digest& b) {
  Digest out;
  for (std::size_t i = 0; i < kDigestBytes; ++i) {
    out.bytes[i] = a.bytes[i] ^ b.bytes[i];
  }
  return out;
}

FieldList& FieldList::add(std::string_view utf8) {
  items_.emplace_back(utf8.begin(), utf8.end());
  return *this;
}

FieldList& FieldList::add(std::span<const std::uint8_t> raw) {
  items_.emplace_back(raw.begin(), raw.end());
  return *this;
}

FieldList& FieldList::add(const Digest& digest) {
  items_.emplace_back(digest.bytes.begin(), digest.bytes.end());
  return *this;
}

Bytes encode_fields(const FieldList& fields) {
  Bytes out;
  for (const Bytes& item : fields.items()) {
    if (item.size() > std::numeric_limits<std::uint32_t>::max()) {
      throw std::length_error("field exceeds 32-bit length prefix");
    }
    const auto len = static_cast<std::uint32_t>(item.size());
    out.push_back(static_cast<std::uint8_t>(len >> 24));
    out.push_back(static_cast<std::uint8_t>(len >> 16));
    out.push_back(static_cast<std::uint8_t>(len >> 8));
    out.push_back(static_cast<std::uint8_t>(len));
    out.insert(out.end(), item.begin(), item.end());
  }
  return out;
}

Digest hash(HashDomain domain, const FieldList& fields) {
  Sha256 ctx;
  const auto prefix = static_cast<std::uint8_t>(domain);
  ctx.update(std::span(&prefix, 1));
  const Bytes encoded = encode_fields(fields);
  ctx.update(encoded);
  Digest d;
  d.bytes = ctx.finish();
  return d;
}

}  // namespace cardproto
