#include "cardproto/scheme_timestamp.hpp"

namespace cardproto {
namespace {

bool fresh(Timestamp stamped, Timestamp now, std::uint64_t window) {
  if (stamped.ticks > now.ticks) return false;  // future-dated
  return now.ticks - stamped.ticks <= window;
}

}  // namespace

Outcome<LoginT> build_login_t(const SmartCard& card, const Password& pw,
                              std::string_view server_identity,
                              Timestamp now) {
  const auto check = card_local_check(card, pw);
  if (!check.ok()) {
    return check.reason();
  }
  const Digest& r_i = check.value();
  const Digest c1 = hash(HashDomain::H1, server_identity, card.user_id, r_i, now);
  return LoginT{
      .request = {.user_id = card.user_id, .t = now, .c1 = c1},
      .session = {.user_id = card.user_id,
                  .server_identity = std::string(server_identity),
                  .r_i = r_i,
                  .t_sent = now},
  };
}

Outcome<AcceptT> server_verify_login_t(ServerState& server,
                                       const LoginRequestT& req,
                                       Timestamp now) {
  if (!server.registry.contains(req.user_id.str())) {
    return RejectReason::identity;
  }
  if (!fresh(req.t, now, server.freshness_window)) {
    return RejectReason::freshness;
  }
  if (server.seen_requests.contains({req.user_id.str(), req.t.ticks})) {
    return RejectReason::freshness;  // exact replay inside the window
  }
  const Digest r_i = derive_user_secret(server, req.user_id);
  const Digest expected =
      hash(HashDomain::H1, server.identity, req.user_id, r_i, req.t);
  if (expected != req.c1) {
    return RejectReason::authenticity;
  }
  server.seen_requests.insert({req.user_id.str(), req.t.ticks});

  const Timestamp t_prime = now;
  const Digest c2 =
      hash(HashDomain::H2, req.user_id, server.identity, r_i, t_prime);
  return AcceptT{
      .reply = {.t_prime = t_prime, .c2 = c2},
      .session = {.user_id = req.user_id,
                  .server_identity = server.identity,
                  .r_i = r_i,
                  .t = req.t,
                  .t_prime = t_prime},
  };
}

Outcome<SessionKeyT> user_verify_reply_t(const UserSessionT& session,
                                         const ServerReplyT& reply,
                                         Timestamp now,
                                         std::uint64_t freshness_window) {
  // Freshness is judged against the receiver's clock only; t' is not
  // bounded relative to the run's own t.
  if (!fresh(reply.t_prime, now, freshness_window)) {
    return RejectReason::freshness;
  }
  const Digest expected = hash(HashDomain::H2, session.user_id,
                               session.server_identity, session.r_i,
                               reply.t_prime);
  if (expected != reply.c2) {
    return RejectReason::authenticity;
  }
  const Digest key =
      hash(HashDomain::H3, session.user_id, session.server_identity,
           session.r_i, session.t_sent, reply.t_prime);
  return SessionKeyT{.key = key, .peer_confirmed = true};
}

SessionKeyT server_session_key_t(const ServerSessionT& session) {
  const Digest key =
      hash(HashDomain::H3, session.user_id, session.server_identity,
           session.r_i, session.t, session.t_prime);
  // Two-message exchange: nothing ever tells the server whether the user
  // accepted the reply, so its copy of the key stays unconfirmed.
  return SessionKeyT{.key = key, .peer_confirmed = false};
}

}  // namespace cardproto
