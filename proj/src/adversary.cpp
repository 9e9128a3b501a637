#include "cardproto/adversary.hpp"

#include <fstream>
#include <set>

#include "cardproto/errors.hpp"

namespace cardproto {
namespace {

constexpr const char* kAttacker = "attacker";

std::string fmt(std::string_view text) { return std::string(text); }

}  // namespace

Dictionary Dictionary::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open dictionary file: " + path);
  }
  Dictionary dict;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.size() > 64) {
      throw ConfigError("dictionary line " + std::to_string(line_no) +
                        " exceeds 64 octets: " + path);
    }
    dict.words.emplace_back(line);
  }
  if (dict.words.empty()) {
    throw ConfigError("dictionary is empty: " + path);
  }
  return dict;
}

bool Dictionary::contains(const Password& pw) const {
  for (const Password& w : words) {
    if (w == pw) return true;
  }
  return false;
}

ExtractedCard extract_card(const SmartCard& card) {
  return ExtractedCard{
      .user_id = card.user_id, .h_i = card.h_i, .x_i = card.x_i};
}

Outcome<RogueCredential> recover_ri_insider(const ExtractedCard& extracted,
                                            const Password& pw) {
  const Digest r_i =
      extracted.x_i ^ hash(HashDomain::H, extracted.user_id, pw);
  if (hash(HashDomain::H, r_i) != extracted.h_i) {
    return RejectReason::password;
  }
  return RogueCredential{.user_id = extracted.user_id, .r_i = r_i};
}

AttackReport clone_login_t(const RogueCredential& cred, ServerState& server,
                           Timestamp now, Channel* channel) {
  AttackReport report;
  report.attack_name = "clone_login_t";
  report.recovered_r_i = cred.r_i;
  report.narrative.push_back("forging timestamp-scheme login for '" +
                             cred.user_id.str() +
                             "' from bare credential (no card, no password)");

  const Digest c1 =
      hash(HashDomain::H1, server.identity, cred.user_id, cred.r_i, now);
  const LoginRequestT request{.user_id = cred.user_id, .t = now, .c1 = c1};
  if (channel != nullptr) {
    channel->inject(kAttacker, now, request);
    channel->deliver("server", now);
  }

  auto accepted = server_verify_login_t(server, request, now);
  if (!accepted.ok()) {
    report.narrative.push_back(
        "server rejected forged login (" +
        fmt(to_string(accepted.reason())) + ")");
    return report;
  }
  report.forged_messages_accepted += 1;
  report.narrative.push_back("server accepted forged login request");

  if (channel != nullptr) {
    channel->send("server", now, accepted.value().reply);
    channel->deliver(kAttacker, now);
  }

  // Complete the user-side check exactly as a real card would, but with the
  // bare credential standing in for the card-derived secret.
  const UserSessionT clone_session{.user_id = cred.user_id,
                                   .server_identity = server.identity,
                                   .r_i = cred.r_i,
                                   .t_sent = now};
  auto key_user = user_verify_reply_t(clone_session, accepted.value().reply,
                                      now, server.freshness_window);
  if (!key_user.ok()) {
    report.narrative.push_back("clone failed to verify server reply (" +
                               fmt(to_string(key_user.reason())) + ")");
    return report;
  }
  report.narrative.push_back("clone verified server reply");

  const SessionKeyT key_server =
      server_session_key_t(accepted.value().session);
  const bool keys_agree = key_user.value().key == key_server.key;
  report.narrative.push_back("session key (clone):  " +
                             key_user.value().key.hex());
  report.narrative.push_back("session key (server): " + key_server.key.hex());
  report.succeeded = keys_agree;
  return report;
}

AttackReport clone_login_n(const RogueCredential& cred,
                           const ServerState& server, Rng& rng,
                           Channel* channel, Timestamp log_tick) {
  AttackReport report;
  report.attack_name = "clone_login_n";
  report.recovered_r_i = cred.r_i;
  report.narrative.push_back("forging nonce-scheme login for '" +
                             cred.user_id.str() +
                             "' from bare credential (no card, no password)");

  const Nonce n_i = draw_nonce(rng);
  const LoginRequestN request{.user_id = cred.user_id, .n_i = n_i};
  const Timestamp tick = log_tick;  // stamps the log only; no protocol use
  if (channel != nullptr) {
    channel->inject(kAttacker, tick, request);
    channel->deliver("server", tick);
  }

  auto challenged = server_challenge_n(server, request, rng);
  if (!challenged.ok()) {
    report.narrative.push_back("server rejected forged login (" +
                               fmt(to_string(challenged.reason())) + ")");
    return report;
  }
  if (channel != nullptr) {
    channel->send("server", tick, challenged.value().challenge);
    channel->deliver(kAttacker, tick);
  }

  const UserSessionN clone_session{.user_id = cred.user_id,
                                   .server_identity = server.identity,
                                   .r_i = cred.r_i,
                                   .n_i = n_i};
  auto accepted =
      user_verify_challenge_n(clone_session, challenged.value().challenge);
  if (!accepted.ok()) {
    report.narrative.push_back("clone failed to verify server challenge (" +
                               fmt(to_string(accepted.reason())) + ")");
    return report;
  }
  report.narrative.push_back("clone verified server challenge");

  if (channel != nullptr) {
    channel->inject(kAttacker, tick, accepted.value().response);
    channel->deliver("server", tick);
  }
  auto key_server = server_verify_response_n(challenged.value().session,
                                             accepted.value().response);
  if (!key_server.ok()) {
    report.narrative.push_back("server rejected forged response (" +
                               fmt(to_string(key_server.reason())) + ")");
    return report;
  }
  report.forged_messages_accepted += 1;
  report.narrative.push_back(
      "server accepted forged response; mutual authentication completed");

  const bool keys_agree = accepted.value().key.key == key_server.value().key;
  report.narrative.push_back("session key (clone):  " +
                             accepted.value().key.key.hex());
  report.narrative.push_back("session key (server): " +
                             key_server.value().key.hex());
  report.succeeded = keys_agree;
  return report;
}

namespace {

// Shared dictionary walk. `hit` decides whether a candidate r* explains the
// observed material; distinct words are counted once, duplicates skipped.
template <typename Hit>
void run_guess_loop(AttackReport& report, const ExtractedCard& extracted,
                    const Dictionary& dict, Hit&& hit) {
  std::set<std::string> tried;
  for (const Password& word : dict.words) {
    if (!tried.insert(word.str()).second) continue;
    report.guesses_tried += 1;
    const Digest r_star =
        extracted.x_i ^ hash(HashDomain::H, extracted.user_id, word);
    if (!hit(r_star)) continue;

    report.succeeded = true;
    report.recovered_password = word;
    report.recovered_r_i = r_star;
    report.narrative.push_back(
        "guess #" + std::to_string(report.guesses_tried) + " '" + word.str() +
        "' reproduced the observed authenticator");
    const bool checks_out = hash(HashDomain::H, r_star) == extracted.h_i;
    report.narrative.push_back(
        std::string("recovered r_i verifies against card h_i: ") +
        (checks_out ? "yes" : "no"));
    return;
  }
  report.narrative.push_back("dictionary exhausted after " +
                             std::to_string(report.guesses_tried) +
                             " distinct guesses, no match");
}

}  // namespace

AttackReport offline_guess(const ExtractedCard& extracted,
                           const LoginRequestT& observed,
                           std::string_view server_identity,
                           const Dictionary& dict) {
  AttackReport report;
  report.attack_name = "offline_guess";
  report.narrative.push_back(
      "guessing against intercepted login request for '" +
      extracted.user_id.str() + "' at t=" + std::to_string(observed.t.ticks));
  run_guess_loop(report, extracted, dict, [&](const Digest& r_star) {
    return hash(HashDomain::H1, server_identity, extracted.user_id, r_star,
                observed.t) == observed.c1;
  });
  return report;
}

AttackReport offline_guess_card_only(const ExtractedCard& extracted,
                                     const Dictionary& dict) {
  AttackReport report;
  report.attack_name = "offline_guess_card_only";
  report.narrative.push_back(
      "guessing against card contents alone (no intercepted traffic; this "
      "variant goes beyond the channel-intercept setting)");
  run_guess_loop(report, extracted, dict, [&](const Digest& r_star) {
    return hash(HashDomain::H, r_star) == extracted.h_i;
  });
  return report;
}

AttackReport offline_guess_n(const ExtractedCard& extracted,
                             const LoginRequestN& observed_login,
                             const ServerChallengeN& observed_challenge,
                             std::string_view server_identity,
                             const Dictionary& dict) {
  AttackReport report;
  report.attack_name = "offline_guess_n";
  report.narrative.push_back(
      "guessing against intercepted nonce-scheme challenge for '" +
      extracted.user_id.str() + "' (transposed from the timestamp scheme)");
  run_guess_loop(report, extracted, dict, [&](const Digest& r_star) {
    return hash(HashDomain::H1, server_identity, extracted.user_id, r_star,
                observed_login.n_i, observed_challenge.n_s) ==
           observed_challenge.c1;
  });
  return report;
}

AttackReport forge_server_reply(const RogueCredential& cred,
                                const LoginRequestT& observed,
                                const UserSessionT& honest_session,
                                Timestamp now,
                                std::uint64_t freshness_window,
                                Channel* channel,
                                std::optional<Timestamp> forged_t_prime) {
  AttackReport report;
  report.attack_name = "forge_server_reply";
  report.recovered_r_i = cred.r_i;
  if (cred.user_id != observed.user_id) {
    report.narrative.push_back(
        "credential does not match the observed request; nothing to forge");
    return report;
  }
  report.narrative.push_back("masquerading as the server for '" +
                             cred.user_id.str() + "'");

  const Timestamp t_prime = forged_t_prime.value_or(now);
  const Digest c2 = hash(HashDomain::H2, cred.user_id,
                         honest_session.server_identity, cred.r_i, t_prime);
  const ServerReplyT forged{.t_prime = t_prime, .c2 = c2};
  if (channel != nullptr) {
    channel->inject(kAttacker, now, forged);
    channel->deliver(cred.user_id.str(), now);
  }

  auto key = user_verify_reply_t(honest_session, forged, now,
                                 freshness_window);
  if (!key.ok()) {
    report.narrative.push_back("honest user rejected forged reply (" +
                               fmt(to_string(key.reason())) + ")");
    return report;
  }
  report.forged_messages_accepted += 1;
  report.succeeded = true;
  report.narrative.push_back("honest user accepted forged server reply");
  report.narrative.push_back("user-side session key now shared with forger: " +
                             key.value().key.hex());
  return report;
}

AttackReport two_factor_audit(ServerState& server, const RogueCredential& cred,
                              Timestamp now, Rng& rng, Channel* channel) {
  AttackReport report;
  report.attack_name = "two_factor_audit";
  report.recovered_r_i = cred.r_i;
  report.narrative.push_back(
      "audit: attempting both schemes with SmartCard values consumed: 0, "
      "Password values consumed: 0");

  AttackReport scheme1 = clone_login_t(cred, server, now, channel);
  AttackReport scheme2 = clone_login_n(cred, server, rng, channel, now);
  for (const std::string& line : scheme1.narrative) {
    report.narrative.push_back("timestamp scheme: " + line);
  }
  for (const std::string& line : scheme2.narrative) {
    report.narrative.push_back("nonce scheme: " + line);
  }
  report.forged_messages_accepted =
      scheme1.forged_messages_accepted + scheme2.forged_messages_accepted;
  report.succeeded = scheme1.succeeded && scheme2.succeeded;
  if (report.succeeded) {
    report.narrative.push_back(
        "authenticated with factors used: {R_i, ID_i} only");
  } else {
    report.narrative.push_back(
        "schemes held: clone runs were rejected (control case)");
  }
  return report;
}

}  // namespace cardproto
