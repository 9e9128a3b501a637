#include "cardproto/enrollment.hpp"

#include <stdexcept>

namespace cardproto {
namespace {

void validate_short_string(const std::string& value, const char* what) {
  if (value.empty()) {
    throw std::invalid_argument(std::string(what) + " must be non-empty");
  }
  if (value.size() > 64) {
    throw std::invalid_argument(std::string(what) + " exceeds 64 octets");
  }
}

}  // namespace

UserId::UserId(std::string id) : id_(std::move(id)) {
  validate_short_string(id_, "user id");
}

Password::Password(std::string secret) : secret_(std::move(secret)) {
  validate_short_string(secret_, "password");
}

ServerState ServerState::create(Rng& rng, std::string identity,
                                std::uint64_t freshness_window) {
  ServerState server;
  server.master_secret = draw_array<32>(rng);
  server.identity = std::move(identity);
  server.freshness_window = freshness_window;
  return server;
}

Digest derive_user_secret(const ServerState& server, const UserId& id) {
  return hash(HashDomain::H, id, server.master_secret);
}

Outcome<SmartCard> register_user(ServerState& server, const UserId& id,
                                 const Password& pw) {
  if (server.registry.contains(id.str())) {
    return RejectReason::identity;
  }
  const Digest r_i = derive_user_secret(server, id);
  const Digest h_i = hash(HashDomain::H, r_i);
  const Digest x_i = r_i ^ hash(HashDomain::H, id, pw);
  server.registry.insert(id.str());
  return SmartCard{.user_id = id, .h_i = h_i, .x_i = x_i};
}

Outcome<Digest> card_local_check(const SmartCard& card, const Password& pw) {
  const Digest r_candidate = card.x_i ^ hash(HashDomain::H, card.user_id, pw);
  if (hash(HashDomain::H, r_candidate) != card.h_i) {
    return RejectReason::password;
  }
  return r_candidate;
}

Outcome<SmartCard> change_password(const SmartCard& card,
                                   const Password& old_pw,
                                   const Password& new_pw) {
  const auto check = card_local_check(card, old_pw);
  if (!check.ok()) {
    return check.reason();
  }
  // r_i is unchanged by a re-key, so h_i stays as issued; only the mask moves.
  SmartCard updated = card;
  updated.x_i = check.value() ^ hash(HashDomain::H, card.user_id, new_pw);
  return updated;
}

}  // namespace cardproto
