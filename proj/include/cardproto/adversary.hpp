#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cardproto/channel.hpp"
#include "cardproto/enrollment.hpp"
#include "cardproto/scheme_nonce.hpp"
#include "cardproto/scheme_timestamp.hpp"

namespace cardproto {

/// The values read out of a card's memory. Extraction is modeled as an
/// oracle: a lossless copy, the card stays usable and nothing detects it.
struct ExtractedCard {
  UserId user_id;
  Digest h_i;
  Digest x_i;
};

/// <id, r_i>: everything needed to pass either scheme. No card, no password.
struct RogueCredential {
  UserId user_id;
  Digest r_i;
};

/// Ordered list of candidate passwords for offline guessing. Duplicate
/// words are permitted but each distinct word is counted once.
struct Dictionary {
  std::vector<Password> words;

  /// Loads a UTF-8 file, one password per line, no escaping. Blank lines
  /// are skipped. Throws ConfigError for unreadable files, lines longer
  /// than a password may be, or an empty result.
  static Dictionary load_file(const std::string& path);

  bool contains(const Password& pw) const;
};

/// Outcome of one attack run. `succeeded` is only set alongside a narrative
/// line recording a concrete verifier acceptance; assertion about whether
/// an attack *should* succeed lives in the test suites, not here.
struct AttackReport {
  std::string attack_name;
  bool succeeded = false;
  std::uint64_t guesses_tried = 0;
  std::optional<Password> recovered_password;
  std::optional<Digest> recovered_r_i;
  std::uint64_t forged_messages_accepted = 0;
  std::vector<std::string> narrative;
};

/// Reads the stored triple out of the card, verbatim.
ExtractedCard extract_card(const SmartCard& card);

/// Insider recovery: the card's own holder computes
/// r_i = x_i XOR h(id, pw) and checks it against h_i.
Outcome<RogueCredential> recover_ri_insider(const ExtractedCard& extracted,
                                            const Password& pw);

/// Full timestamp-scheme login driven from a bare credential: forge the
/// request, let the server verify it, then check the reply and compare
/// session keys. When `channel` is given the message flow is logged there.
AttackReport clone_login_t(const RogueCredential& cred, ServerState& server,
                           Timestamp now, Channel* channel = nullptr);

/// Full nonce-scheme login driven from a bare credential. The protocol
/// itself never reads a clock; log_tick only stamps the channel log.
AttackReport clone_login_n(const RogueCredential& cred,
                           const ServerState& server, Rng& rng,
                           Channel* channel = nullptr,
                           Timestamp log_tick = {});

/// Offline password guessing against an intercepted timestamp-scheme
/// request: per word w, r* = x_i XOR h(id, w) and a hit is
/// h1(S, id, r*, t) == c1. Purely offline, no server interaction.
AttackReport offline_guess(const ExtractedCard& extracted,
                           const LoginRequestT& observed,
                           std::string_view server_identity,
                           const Dictionary& dict);

/// Variant needing no intercepted traffic at all: filters candidates with
/// h(x_i XOR h(id, w)) == h_i. Goes beyond the channel-intercept setting;
/// the narrative says so.
AttackReport offline_guess_card_only(const ExtractedCard& extracted,
                                     const Dictionary& dict);

/// Transposition of the guessing attack to nonce-scheme traffic: a hit is
/// h1(S, id, r*, n_i, n_s) == c1 for an observed login/challenge pair.
AttackReport offline_guess_n(const ExtractedCard& extracted,
                             const LoginRequestN& observed_login,
                             const ServerChallengeN& observed_challenge,
                             std::string_view server_identity,
                             const Dictionary& dict);

/// Server masquerade: forge <t', c2> for an observed request and test it
/// against the honest user session that produced the request. The reply is
/// stamped `now` unless forged_t_prime overrides it (a back-dated stamp
/// exercises the user's freshness gate).
AttackReport forge_server_reply(const RogueCredential& cred,
                                const LoginRequestT& observed,
                                const UserSessionT& honest_session,
                                Timestamp now,
                                std::uint64_t freshness_window = 60,
                                Channel* channel = nullptr,
                                std::optional<Timestamp> forged_t_prime = {});

/// Runs both clone logins from the bare credential and reports the factor
/// inventory: no SmartCard value and no Password value is consumed on the
/// successful path.
AttackReport two_factor_audit(ServerState& server, const RogueCredential& cred,
                              Timestamp now, Rng& rng,
                              Channel* channel = nullptr);

}  // namespace cardproto
