#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cardproto/enrollment.hpp"

namespace cardproto {

/// Fresh 16-octet challenge value. Drawn once per use from the run's seeded
/// generator; never reused.
struct Nonce {
  std::array<std::uint8_t, 16> value{};

  friend bool operator==(const Nonce&, const Nonce&) = default;
  friend auto operator<=>(const Nonce&, const Nonce&) = default;

  std::string hex() const { return to_hex(value); }
  static std::optional<Nonce> from_hex(std::string_view hex);
};

Nonce draw_nonce(Rng& rng);

inline void append_field(FieldList& fields, const Nonce& n) {
  fields.add(std::span<const std::uint8_t>(n.value));
}

// --- wire messages -----------------------------------------------------

/// <id, n_i>. Deliberately unauthenticated: anyone can open a run.
struct LoginRequestN {
  UserId user_id;
  Nonce n_i;

  friend bool operator==(const LoginRequestN&, const LoginRequestN&) = default;
};

/// <c1, n_s> with c1 = h1(S, id, r_i, n_i, n_s) for honest challenges.
struct ServerChallengeN {
  Digest c1;
  Nonce n_s;

  friend bool operator==(const ServerChallengeN&,
                         const ServerChallengeN&) = default;
};

/// <c2> with c2 = h2(id, S, r_i, n_s, n_i). Note the nonce order is swapped
/// relative to c1; under the injective field encoding the order matters.
struct UserResponseN {
  Digest c2;

  friend bool operator==(const UserResponseN&, const UserResponseN&) = default;
};

// --- run state ----------------------------------------------------------

/// key = h3(id, S, r_i, n_i, n_s). The user side derives it when emitting
/// c2, before the server has ruled on c2, so its copy is flagged
/// unconfirmed; the server's copy after a valid c2 is confirmed.
struct SessionKeyN {
  Digest key;
  bool peer_confirmed = false;
};

struct UserSessionN {
  UserId user_id;
  std::string server_identity;
  Digest r_i;
  Nonce n_i;
};

struct ServerSessionN {
  UserId user_id;
  std::string server_identity;
  Digest r_i;
  Nonce n_i;
  Nonce n_s;
};

struct LoginN {
  LoginRequestN request;
  UserSessionN session;
};

struct ChallengeN {
  ServerChallengeN challenge;
  ServerSessionN session;
};

/// The user's c2 together with the key it already derives.
struct UserAcceptN {
  UserResponseN response;
  SessionKeyN key;
};

// --- operations ---------------------------------------------------------

/// Card-side login: the password gate runs first; the nonce is drawn only
/// after it passes, so a rejected attempt leaves the generator untouched.
Outcome<LoginN> build_login_n(const SmartCard& card, const Password& pw,
                              std::string_view server_identity, Rng& rng);

/// Server side: check the id, draw n_s, answer with c1 binding both nonces.
Outcome<ChallengeN> server_challenge_n(const ServerState& server,
                                       const LoginRequestN& req, Rng& rng);

/// User side: c1 must recompute against the session's n_i and the received
/// n_s. On acceptance emits c2 and derives the key (unconfirmed).
Outcome<UserAcceptN> user_verify_challenge_n(const UserSessionN& session,
                                             const ServerChallengeN& challenge);

/// Server side: c2 must recompute; on acceptance the run is mutually
/// authenticated and the key is returned confirmed.
Outcome<SessionKeyN> server_verify_response_n(const ServerSessionN& session,
                                              const UserResponseN& response);

}  // namespace cardproto
