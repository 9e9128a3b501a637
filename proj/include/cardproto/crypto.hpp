#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cardproto {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::size_t kDigestBytes = 32;

/// Fixed-length output of the system hash. This is the universal currency
/// for every derived value in the protocols (r_i, h_i, x_i, c1, c2, session
/// keys). Two digests are equal iff their octet strings are identical.
struct Digest {
  std::array<std::uint8_t, kDigestBytes> bytes{};

  friend bool operator==(const Digest&, const Digest&) = default;
  friend auto operator<=>(const Digest&, const Digest&) = default;

  std::string hex() const;
  static std::optional<Digest> from_hex(std::string_view hex);
};

/// Octet-wise XOR. Commutative, associative, self-inverse.
Digest operator^(const Digest& a, const Digest& b);

/// The four distinct one-way hash functions of the protocol suite, realized
/// as one primitive (SHA-256) behind distinct 1-octet domain prefixes.
enum class HashDomain : std::uint8_t {
  H = 0x01,
  H1 = 0x02,
  H2 = 0x03,
  H3 = 0x04,
};

/// Ordered sequence of octet-string fields. The encoding (see encode_fields)
/// is injective, so distinct field lists never hash alike.
class FieldList {
 public:
  FieldList() = default;

  FieldList& add(std::string_view utf8);
  FieldList& add(std::span<const std::uint8_t> raw);
  FieldList& add(const Digest& digest);

  const std::vector<Bytes>& items() const { return items_; }

 private:
  std::vector<Bytes> items_;
};

inline void append_field(FieldList& fields, std::string_view utf8) {
  fields.add(utf8);
}
inline void append_field(FieldList& fields, const Digest& digest) {
  fields.add(digest);
}
inline void append_field(FieldList& fields, std::span<const std::uint8_t> raw) {
  fields.add(raw);
}
inline void append_field(FieldList& fields, const Bytes& raw) {
  fields.add(std::span<const std::uint8_t>(raw));
}

/// Each item is emitted as a 4-octet big-endian length followed by the item's
/// octets, concatenated in order. Throws std::length_error for items longer
/// than 2^32-1 octets.
Bytes encode_fields(const FieldList& fields);

/// Bit-exact hash input layout: domain octet || encode_fields(fields).
Digest hash(HashDomain domain, const FieldList& fields);

/// hash(domain, f1, f2, ...) with each argument rendered via append_field.
template <typename... Fields>
Digest hash(HashDomain domain, const Fields&... fields) {
  FieldList list;
  (append_field(list, fields), ...);
  return hash(domain, list);
}

std::string to_hex(std::span<const std::uint8_t> data);
std::optional<Bytes> bytes_from_hex(std::string_view hex);

}  // namespace cardproto
