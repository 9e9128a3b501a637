#include "cardproto/scenario.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace cardproto {
namespace {

constexpr const char* kServerIdentity = "remote-server";
constexpr const char* kServerActor = "server";
constexpr const char* kAttackerActor = "attacker";
constexpr std::uint64_t kBaseTickStart = 1000;

bool within_window(Timestamp stamped, Timestamp now, std::uint64_t window) {
  return stamped.ticks <= now.ticks && now.ticks - stamped.ticks <= window;
}

/// Mutable state threaded through one scenario run: the seeded generator,
/// the server, the registered users with their cards, the channel, and the
/// expectation records that become the verdict.
struct ScenarioWorld {
  ScenarioConfig config;
  Rng rng;
  Channel channel;
  ServerState server;
  std::vector<std::pair<UserId, Password>> users;
  std::vector<SmartCard> cards;
  std::vector<CheckRecord> checks;
  std::vector<AttackReport> reports;
  std::uint64_t base_tick = kBaseTickStart;

  explicit ScenarioWorld(ScenarioConfig cfg)
      : config(std::move(cfg)), rng(config.seed) {
    if (config.users.empty()) {
      config.users.emplace_back("alice", "sunrise-otter-42");
    }
    server = ServerState::create(rng, kServerIdentity,
                                 config.freshness_window);
    for (const auto& [id_str, pw_str] : config.users) {
      UserId id{id_str};
      Password pw{pw_str};
      auto card = register_user(server, id, pw);
      if (!card.ok()) {
        throw ConfigError("duplicate user id in config: " + id_str);
      }
      users.emplace_back(id, pw);
      cards.push_back(std::move(card).value());
    }
  }

  std::int64_t skew_of(const std::string& principal,
                       const std::string& role) const {
    if (auto it = config.clock_skews.find(principal);
        it != config.clock_skews.end()) {
      return it->second;
    }
    if (auto it = config.clock_skews.find(role);
        it != config.clock_skews.end()) {
      return it->second;
    }
    return 0;
  }

  Timestamp clock_at(std::int64_t skew) const {
    const auto shifted = static_cast<std::int64_t>(base_tick) + skew;
    return Timestamp{shifted < 0 ? 0 : static_cast<std::uint64_t>(shifted)};
  }

  Timestamp user_clock(const UserId& id) const {
    return clock_at(skew_of(id.str(), "user"));
  }
  Timestamp server_clock() const {
    return clock_at(skew_of(kServerActor, kServerActor));
  }
  Timestamp attacker_clock() const {
    return clock_at(skew_of(kAttackerActor, kAttackerActor));
  }
  /// Channel events are stamped with the unskewed base clock.
  Timestamp channel_tick() const { return Timestamp{base_tick}; }

  void advance() { ++base_tick; }

  void expect(std::string name, bool held) {
    checks.push_back(CheckRecord{std::move(name), held});
  }
};

using ScenarioFn = std::function<void(ScenarioWorld&)>;

// --- honest runs ---------------------------------------------------------

/// One full timestamp-scheme exchange for user 0, with the accept/reject
/// verdicts predicted from the configured clock skews rather than assumed.
struct HonestRunT {
  bool completed = false;
  std::optional<LoginRequestT> request;
  std::optional<UserSessionT> session;
};

HonestRunT honest_exchange_t(ScenarioWorld& w) {
  HonestRunT run;
  const auto& [id, pw] = w.users[0];
  const SmartCard& card = w.cards[0];

  const Timestamp t_user = w.user_clock(id);
  auto login = build_login_t(card, pw, w.server.identity, t_user);
  w.expect("card accepted the correct password", login.ok());
  if (!login.ok()) return run;
  run.request = login.value().request;
  run.session = login.value().session;

  w.channel.send(id.str(), w.channel_tick(), login.value().request);
  w.advance();
  w.channel.deliver(kServerActor, w.channel_tick());

  const Timestamp now_server = w.server_clock();
  const bool predicted_accept =
      within_window(run.request->t, now_server, w.config.freshness_window);
  auto accepted = server_verify_login_t(w.server, *run.request, now_server);
  w.expect("server verdict matches the clock-skew prediction",
           accepted.ok() == predicted_accept);
  if (!accepted.ok()) {
    if (!predicted_accept) {
      w.expect("login rejected for freshness",
               accepted.reason() == RejectReason::freshness);
    }
    return run;
  }

  w.channel.send(kServerActor, w.channel_tick(), accepted.value().reply);
  w.advance();
  w.channel.deliver(id.str(), w.channel_tick());

  const Timestamp now_user = w.user_clock(id);
  const bool predicted_reply_accept = within_window(
      accepted.value().reply.t_prime, now_user, w.config.freshness_window);
  auto key_user = user_verify_reply_t(*run.session, accepted.value().reply,
                                      now_user, w.config.freshness_window);
  w.expect("user verdict matches the clock-skew prediction",
           key_user.ok() == predicted_reply_accept);
  if (!key_user.ok()) return run;

  const SessionKeyT key_server =
      server_session_key_t(accepted.value().session);
  w.expect("session keys equal on both sides",
           key_user.value().key == key_server.key);
  run.completed = true;
  return run;
}

void scenario_honest_t(ScenarioWorld& w) { honest_exchange_t(w); }

void scenario_honest_n(ScenarioWorld& w) {
  const auto& [id, pw] = w.users[0];
  const SmartCard& card = w.cards[0];

  auto login = build_login_n(card, pw, w.server.identity, w.rng);
  w.expect("card accepted the correct password", login.ok());
  if (!login.ok()) return;

  w.channel.send(id.str(), w.channel_tick(), login.value().request);
  w.advance();
  w.channel.deliver(kServerActor, w.channel_tick());
  auto challenged =
      server_challenge_n(w.server, login.value().request, w.rng);
  w.expect("server issued a challenge for the registered id",
           challenged.ok());
  if (!challenged.ok()) return;

  w.channel.send(kServerActor, w.channel_tick(),
                 challenged.value().challenge);
  w.advance();
  w.channel.deliver(id.str(), w.channel_tick());
  auto accepted = user_verify_challenge_n(login.value().session,
                                          challenged.value().challenge);
  w.expect("user verified the server challenge", accepted.ok());
  if (!accepted.ok()) return;

  w.channel.send(id.str(), w.channel_tick(), accepted.value().response);
  w.advance();
  w.channel.deliver(kServerActor, w.channel_tick());
  auto key_server = server_verify_response_n(challenged.value().session,
                                             accepted.value().response);
  w.expect("server verified the user response", key_server.ok());
  if (!key_server.ok()) return;

  w.expect("session keys equal on both sides",
           accepted.value().key.key == key_server.value().key);
}

// --- replay --------------------------------------------------------------

void scenario_replay_t(ScenarioWorld& w) {
  const HonestRunT run = honest_exchange_t(w);
  if (!run.request.has_value()) return;
  const bool first_accepted =
      w.server.seen_requests.contains({run.request->user_id.str(),
                                       run.request->t.ticks});

  auto observed = w.channel.intercept(
      kAttackerActor, w.channel_tick(), [](const ProtocolMessage& m) {
        return std::holds_alternative<LoginRequestT>(m);
      });
  if (!observed.has_value()) {
    throw ScenarioError("replay_t: no login request on the channel");
  }
  w.channel.inject(kAttackerActor, w.channel_tick(), *observed);
  w.advance();
  w.channel.deliver(kServerActor, w.channel_tick());

  const Timestamp now_server = w.server_clock();
  // A second copy of an accepted request must be refused even though its
  // timestamp may still sit inside the window. If the first copy was never
  // accepted (skewed configs), the plain window rule applies instead.
  const bool predicted_accept =
      !first_accepted &&
      within_window(run.request->t, now_server, w.config.freshness_window);
  auto replayed = server_verify_login_t(
      w.server, std::get<LoginRequestT>(*observed), now_server);
  w.expect("replayed request verdict matches the replay prediction",
           replayed.ok() == predicted_accept);
  if (first_accepted) {
    w.expect("replay rejected for freshness",
             !replayed.ok() && replayed.reason() == RejectReason::freshness);
  }
}

// --- insider attacks -----------------------------------------------------

Outcome<RogueCredential> insider_credential(ScenarioWorld& w) {
  const auto& [id, pw] = w.users[0];
  const ExtractedCard extracted = extract_card(w.cards[0]);
  auto cred = recover_ri_insider(extracted, pw);
  w.expect("insider recovered a credential from their own card", cred.ok());
  if (cred.ok()) {
    w.expect("recovered r_i equals the server-derived user secret",
             cred.value().r_i == derive_user_secret(w.server, id));
  }
  return cred;
}

void scenario_insider_clone_t(ScenarioWorld& w) {
  auto cred = insider_credential(w);
  if (!cred.ok()) return;
  w.advance();
  AttackReport report = clone_login_t(cred.value(), w.server,
                                      w.attacker_clock(), &w.channel);
  w.reports.push_back(report);
  w.expect("clone completed the timestamp-scheme login", report.succeeded);
  w.expect("server accepted at least one forged message",
           report.forged_messages_accepted >= 1);
}

void scenario_insider_clone_n(ScenarioWorld& w) {
  auto cred = insider_credential(w);
  if (!cred.ok()) return;
  w.advance();
  AttackReport report = clone_login_n(cred.value(), w.server, w.rng,
                                       &w.channel, w.channel_tick());
  w.reports.push_back(report);
  w.expect("clone completed the nonce-scheme login", report.succeeded);
  w.expect("server accepted at least one forged message",
           report.forged_messages_accepted >= 1);
}

// --- stolen card + offline guessing ---------------------------------------

void scenario_stolen_card_guess(ScenarioWorld& w) {
  if (!w.config.dictionary_path.has_value()) {
    throw ConfigError(
        "scenario stolen_card_guess requires a dictionary (--dict PATH)");
  }
  const Dictionary dict = Dictionary::load_file(*w.config.dictionary_path);
  const auto& [id, pw] = w.users[0];

  // The victim logs in; the attacker taps the request without disturbing it.
  const Timestamp t_user = w.user_clock(id);
  auto login = build_login_t(w.cards[0], pw, w.server.identity, t_user);
  w.expect("card accepted the correct password", login.ok());
  if (!login.ok()) return;
  w.channel.send(id.str(), w.channel_tick(), login.value().request);

  auto observed = w.channel.intercept(
      kAttackerActor, w.channel_tick(), [](const ProtocolMessage& m) {
        return std::holds_alternative<LoginRequestT>(m);
      });
  if (!observed.has_value()) {
    throw ScenarioError("stolen_card_guess: nothing to intercept");
  }

  w.advance();
  w.channel.deliver(kServerActor, w.channel_tick());
  const Timestamp now_server = w.server_clock();
  const bool predicted_accept = within_window(
      login.value().request.t, now_server, w.config.freshness_window);
  auto accepted =
      server_verify_login_t(w.server, login.value().request, now_server);
  w.expect("passive tap left the honest login undisturbed",
           accepted.ok() == predicted_accept);

  // The card is later stolen and read out; guessing happens offline.
  const ExtractedCard extracted = extract_card(w.cards[0]);
  AttackReport guess =
      offline_guess(extracted, std::get<LoginRequestT>(*observed),
                    w.server.identity, dict);
  w.reports.push_back(guess);

  const bool in_dict = dict.contains(pw);
  w.expect("offline guess succeeded iff the dictionary holds the password",
           guess.succeeded == in_dict);
  if (in_dict) {
    w.expect("recovered password equals the card owner's password",
             guess.recovered_password.has_value() &&
                 *guess.recovered_password == pw);
    w.expect("recovered r_i equals the server-derived user secret",
             guess.recovered_r_i.has_value() &&
                 *guess.recovered_r_i == derive_user_secret(w.server, id));
  }

  AttackReport card_only = offline_guess_card_only(extracted, dict);
  w.reports.push_back(card_only);
  const bool same_password =
      !guess.succeeded ||
      (card_only.recovered_password.has_value() &&
       guess.recovered_password.has_value() &&
       *card_only.recovered_password == *guess.recovered_password);
  w.expect("card-only variant agrees with the intercept variant",
           card_only.succeeded == guess.succeeded && same_password);
}

// --- server masquerade -----------------------------------------------------

void scenario_server_masquerade_t(ScenarioWorld& w) {
  const auto& [id, pw] = w.users[0];

  const Timestamp t_user = w.user_clock(id);
  auto login = build_login_t(w.cards[0], pw, w.server.identity, t_user);
  w.expect("card accepted the correct password", login.ok());
  if (!login.ok()) return;
  w.channel.send(id.str(), w.channel_tick(), login.value().request);

  // The attacker taps the request and keeps it from the real server.
  auto observed = w.channel.intercept(
      kAttackerActor, w.channel_tick(), [](const ProtocolMessage& m) {
        return std::holds_alternative<LoginRequestT>(m);
      });
  if (!observed.has_value()) {
    throw ScenarioError("server_masquerade_t: nothing to intercept");
  }
  w.channel.drop(kAttackerActor, w.channel_tick());

  auto cred = insider_credential(w);
  if (!cred.ok()) return;

  w.advance();
  AttackReport report = forge_server_reply(
      cred.value(), std::get<LoginRequestT>(*observed), login.value().session,
      w.attacker_clock(), w.config.freshness_window, &w.channel);
  w.reports.push_back(report);
  w.expect("honest user accepted the forged server reply", report.succeeded);

  bool server_saw_traffic = false;
  for (const ChannelEvent& ev : w.channel.events()) {
    if (ev.kind == EventKind::deliver && ev.actor == kServerActor) {
      server_saw_traffic = true;
    }
  }
  w.expect("the real server never processed a message", !server_saw_traffic);
}

// --- two-factor audit -------------------------------------------------------

void scenario_two_factor_audit(ScenarioWorld& w) {
  auto cred = insider_credential(w);
  if (!cred.ok()) return;
  w.advance();
  AttackReport report = two_factor_audit(w.server, cred.value(),
                                         w.attacker_clock(), w.rng,
                                         &w.channel);
  w.reports.push_back(report);
  w.expect("both schemes authenticated with neither factor",
           report.succeeded);
  bool inventory_line = false;
  for (const std::string& line : report.narrative) {
    if (line.find("factors used: {R_i, ID_i} only") != std::string::npos) {
      inventory_line = true;
    }
  }
  w.expect("factor inventory recorded in the narrative", inventory_line);
}

const std::vector<std::pair<std::string, ScenarioFn>>& scenario_table() {
  static const std::vector<std::pair<std::string, ScenarioFn>> table = {
      {"honest_t", scenario_honest_t},
      {"honest_n", scenario_honest_n},
      {"replay_t", scenario_replay_t},
      {"insider_clone_t", scenario_insider_clone_t},
      {"insider_clone_n", scenario_insider_clone_n},
      {"stolen_card_guess", scenario_stolen_card_guess},
      {"server_masquerade_t", scenario_server_masquerade_t},
      {"two_factor_audit", scenario_two_factor_audit},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : scenario_table()) {
      out.push_back(name);
    }
    return out;
  }();
  return names;
}

Transcript run_scenario(const ScenarioConfig& config) {
  const ScenarioFn* fn = nullptr;
  for (const auto& [name, candidate] : scenario_table()) {
    if (name == config.scenario_name) {
      fn = &candidate;
      break;
    }
  }
  if (fn == nullptr) {
    std::ostringstream msg;
    msg << "unknown scenario '" << config.scenario_name << "'; available:";
    for (const std::string& name : scenario_names()) {
      msg << " " << name;
    }
    throw ConfigError(msg.str());
  }

  try {
    ScenarioWorld world(config);
    (*fn)(world);

    Transcript transcript;
    transcript.config = world.config;
    transcript.events = world.channel.events();
    transcript.reports = std::move(world.reports);
    transcript.checks = std::move(world.checks);
    for (const CheckRecord& check : transcript.checks) {
      if (!check.held) {
        transcript.verdict.all_pass = false;
        transcript.verdict.failures.push_back(check.name);
      }
    }
    return transcript;
  } catch (const std::invalid_argument& bad_value) {
    throw ConfigError(std::string("invalid configuration: ") +
                      bad_value.what());
  }
}

}  // namespace cardproto
