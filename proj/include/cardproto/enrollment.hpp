#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <utility>

#include "cardproto/crypto.hpp"
#include "cardproto/outcome.hpp"
#include "cardproto/random.hpp"

namespace cardproto {

/// Non-empty identity string, at most 64 octets. Unique per server registry.
class UserId {
 public:
  explicit UserId(std::string id);

  const std::string& str() const { return id_; }

  friend bool operator==(const UserId&, const UserId&) = default;
  friend auto operator<=>(const UserId&, const UserId&) = default;

 private:
  std::string id_;
};

/// Non-empty secret string, at most 64 octets.
class Password {
 public:
  explicit Password(std::string secret);

  const std::string& str() const { return secret_; }

  friend bool operator==(const Password&, const Password&) = default;
  friend auto operator<=>(const Password&, const Password&) = default;

 private:
  std::string secret_;
};

inline void append_field(FieldList& fields, const UserId& id) {
  fields.add(id.str());
}
inline void append_field(FieldList& fields, const Password& pw) {
  fields.add(pw.str());
}

using MasterSecret = std::array<std::uint8_t, 32>;

/// Server-side long-term state. The master secret never travels on the
/// channel and never appears in transcripts or reports; every per-user
/// secret is derived from it as r_i = h(id, master_secret).
struct ServerState {
  MasterSecret master_secret{};
  std::string identity;
  std::set<std::string> registry;
  std::uint64_t freshness_window = 60;
  // (id, tick) pairs already accepted once; exact replays are refused even
  // inside the freshness window.
  std::set<std::pair<std::string, std::uint64_t>> seen_requests;

  static ServerState create(Rng& rng, std::string identity,
                            std::uint64_t freshness_window);
};

/// The personalized token issued at registration: <id, h_i, x_i> plus the
/// identifiers of the four hash functions. Neither r_i nor the password is
/// stored in clear.
struct SmartCard {
  UserId user_id;
  Digest h_i;  // h(r_i): card-local password check value
  Digest x_i;  // r_i XOR h(id, pw): password-masked copy of the user secret
  std::array<HashDomain, 4> hash_family{HashDomain::H, HashDomain::H1,
                                        HashDomain::H2, HashDomain::H3};
};

/// r_i = h(id, master_secret), the per-user secret both schemes rest on.
Digest derive_user_secret(const ServerState& server, const UserId& id);

/// Registers `id` and personalizes a card. Rejects a duplicate id and leaves
/// the server untouched in that case.
Outcome<SmartCard> register_user(ServerState& server, const UserId& id,
                                 const Password& pw);

/// Re-keys the card to `new_pw` after checking `old_pw` against h_i.
/// Returns the updated card; on rejection the input card is untouched.
Outcome<SmartCard> change_password(const SmartCard& card,
                                   const Password& old_pw,
                                   const Password& new_pw);

/// Card-local password gate shared by both schemes and the password change:
/// recovers r_i' = x_i XOR h(id, pw) and releases it only if h(r_i') == h_i.
Outcome<Digest> card_local_check(const SmartCard& card, const Password& pw);

}  // namespace cardproto
