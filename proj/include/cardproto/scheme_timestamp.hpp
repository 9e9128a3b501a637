#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "cardproto/enrollment.hpp"

namespace cardproto {

/// Logical tick count. Freshness of a received message is judged against
/// the receiver's own clock: a timestamp t is fresh at local time `now` iff
/// now - t lies in [0, freshness_window].
struct Timestamp {
  std::uint64_t ticks = 0;

  friend bool operator==(const Timestamp&, const Timestamp&) = default;
  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

/// Rendered into hash inputs as 8 octets, big-endian.
inline void append_field(FieldList& fields, Timestamp t) {
  std::uint8_t be[8];
  for (int i = 0; i < 8; ++i) {
    be[i] = static_cast<std::uint8_t>(t.ticks >> (56 - 8 * i));
  }
  fields.add(std::span<const std::uint8_t>(be, 8));
}

// --- wire messages -----------------------------------------------------

/// <id, t, c1> with c1 = h1(S, id, r_i, t) for honestly produced requests.
struct LoginRequestT {
  UserId user_id;
  Timestamp t;
  Digest c1;

  friend bool operator==(const LoginRequestT&, const LoginRequestT&) = default;
};

/// <t', c2> with c2 = h2(id, S, r_i, t') for honest replies.
struct ServerReplyT {
  Timestamp t_prime;
  Digest c2;

  friend bool operator==(const ServerReplyT&, const ServerReplyT&) = default;
};

// --- run state ----------------------------------------------------------

/// key = h3(id, S, r_i, t, t') for the run's values. peer_confirmed is true
/// when the holder knows every check in the run passed: true for the user
/// (a valid reply proves the server accepted the request), false for the
/// server (no message reports the user's verdict back).
struct SessionKeyT {
  Digest key;
  bool peer_confirmed = false;
};

/// Card-side state kept between emitting the request and checking the reply.
struct UserSessionT {
  UserId user_id;
  std::string server_identity;
  Digest r_i;
  Timestamp t_sent;
};

struct ServerSessionT {
  UserId user_id;
  std::string server_identity;
  Digest r_i;
  Timestamp t;
  Timestamp t_prime;
};

struct LoginT {
  LoginRequestT request;
  UserSessionT session;
};

struct AcceptT {
  ServerReplyT reply;
  ServerSessionT session;
};

// --- operations ---------------------------------------------------------

/// Card-side login: gate on the local password check, then emit
/// <id, now, h1(S, id, r_i, now)>. Rejects without emitting anything when
/// the password fails.
Outcome<LoginT> build_login_t(const SmartCard& card, const Password& pw,
                              std::string_view server_identity, Timestamp now);

/// Server-side checks, in order: id registered; now - t within the window
/// and not in the past-request set; c1 recomputes. On acceptance records
/// (id, t) as seen and replies <now, c2>.
Outcome<AcceptT> server_verify_login_t(ServerState& server,
                                       const LoginRequestT& req,
                                       Timestamp now);

/// Card-side check of the reply: t' fresh against the user's clock and the
/// shared window policy, then c2 recomputes. On acceptance returns the
/// session key with the peer confirmed.
Outcome<SessionKeyT> user_verify_reply_t(const UserSessionT& session,
                                         const ServerReplyT& reply,
                                         Timestamp now,
                                         std::uint64_t freshness_window);

/// The server's copy of the session key for a completed run.
SessionKeyT server_session_key_t(const ServerSessionT& session);

}  // namespace cardproto
