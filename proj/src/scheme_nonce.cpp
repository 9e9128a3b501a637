#include "cardproto/scheme_nonce.hpp"

namespace cardproto {

std::optional<Nonce> Nonce::from_hex(std::string_view hex) {
  const auto raw = bytes_from_hex(hex);
  if (!raw || raw->size() != 16) return std::nullopt;
  Nonce n;
  std::copy(raw->begin(), raw->end(), n.value.begin());
  return n;
}

Nonce draw_nonce(Rng& rng) {
  Nonce n;
  n.value = draw_array<16>(rng);
  return n;
}

Outcome<LoginN> build_login_n(const SmartCard& card, const Password& pw,
                              std::string_view server_identity, Rng& rng) {
  const auto check = card_local_check(card, pw);
  if (!check.ok()) {
    return check.reason();
  }
  const Nonce n_i = draw_nonce(rng);
  return LoginN{
      .request = {.user_id = card.user_id, .n_i = n_i},
      .session = {.user_id = card.user_id,
                  .server_identity = std::string(server_identity),
                  .r_i = check.value(),
                  .n_i = n_i},
  };
}

Outcome<ChallengeN> server_challenge_n(const ServerState& server,
                                       const LoginRequestN& req, Rng& rng) {
  if (!server.registry.contains(req.user_id.str())) {
    return RejectReason::identity;
  }
  const Nonce n_s = draw_nonce(rng);
  const Digest r_i = derive_user_secret(server, req.user_id);
  const Digest c1 =
      hash(HashDomain::H1, server.identity, req.user_id, r_i, req.n_i, n_s);
  return ChallengeN{
      .challenge = {.c1 = c1, .n_s = n_s},
      .session = {.user_id = req.user_id,
                  .server_identity = server.identity,
                  .r_i = r_i,
                  .n_i = req.n_i,
                  .n_s = n_s},
  };
}

Outcome<UserAcceptN> user_verify_challenge_n(
    const UserSessionN& session, const ServerChallengeN& challenge) {
  const Digest expected =
      hash(HashDomain::H1, session.server_identity, session.user_id,
           session.r_i, session.n_i, challenge.n_s);
  if (expected != challenge.c1) {
    return RejectReason::authenticity;
  }
  const Digest c2 = hash(HashDomain::H2, session.user_id,
                         session.server_identity, session.r_i, challenge.n_s,
                         session.n_i);
  const Digest key =
      hash(HashDomain::H3, session.user_id, session.server_identity,
           session.r_i, session.n_i, challenge.n_s);
  return UserAcceptN{
      .response = {.c2 = c2},
      .key = {.key = key, .peer_confirmed = false},
  };
}

Outcome<SessionKeyN> server_verify_response_n(const ServerSessionN& session,
                                              const UserResponseN& response) {
  const Digest expected =
      hash(HashDomain::H2, session.user_id, session.server_identity,
           session.r_i, session.n_s, session.n_i);
  if (expected != response.c2) {
    return RejectReason::authenticity;
  }
  const Digest key =
      hash(HashDomain::H3, session.user_id, session.server_identity,
           session.r_i, session.n_i, session.n_s);
  return SessionKeyN{.key = key, .peer_confirmed = true};
}

}  // namespace cardproto
