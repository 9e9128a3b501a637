#include <sstream>
#include <string>

#include "cardproto/scenario.hpp"
#include "json.hpp"

namespace cardproto {
namespace {

using Json = nlohmann::ordered_json;

Json message_to_json(const ProtocolMessage& message) {
  Json j;
  std::visit(
      [&j](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, LoginRequestT>) {
          j["type"] = "login_request_t";
          j["user_id"] = m.user_id.str();
          j["t"] = m.t.ticks;
          j["c1"] = m.c1.hex();
        } else if constexpr (std::is_same_v<M, ServerReplyT>) {
          j["type"] = "server_reply_t";
          j["t_prime"] = m.t_prime.ticks;
          j["c2"] = m.c2.hex();
        } else if constexpr (std::is_same_v<M, LoginRequestN>) {
          j["type"] = "login_request_n";
          j["user_id"] = m.user_id.str();
          j["n_i"] = m.n_i.hex();
        } else if constexpr (std::is_same_v<M, ServerChallengeN>) {
          j["type"] = "server_challenge_n";
          j["c1"] = m.c1.hex();
          j["n_s"] = m.n_s.hex();
        } else if constexpr (std::is_same_v<M, UserResponseN>) {
          j["type"] = "user_response_n";
          j["c2"] = m.c2.hex();
        }
      },
      message);
  return j;
}

Digest digest_from_json(const Json& j, const char* key) {
  const auto parsed = Digest::from_hex(j.at(key).get<std::string>());
  if (!parsed) throw ConfigError(std::string("bad digest in field ") + key);
  return *parsed;
}

Nonce nonce_from_json(const Json& j, const char* key) {
  const auto parsed = Nonce::from_hex(j.at(key).get<std::string>());
  if (!parsed) throw ConfigError(std::string("bad nonce in field ") + key);
  return *parsed;
}

ProtocolMessage message_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "login_request_t") {
    return LoginRequestT{
        .user_id = UserId(j.at("user_id").get<std::string>()),
        .t = Timestamp{j.at("t").get<std::uint64_t>()},
        .c1 = digest_from_json(j, "c1")};
  }
  if (type == "server_reply_t") {
    return ServerReplyT{.t_prime = Timestamp{j.at("t_prime").get<std::uint64_t>()},
                        .c2 = digest_from_json(j, "c2")};
  }
  if (type == "login_request_n") {
    return LoginRequestN{.user_id = UserId(j.at("user_id").get<std::string>()),
                         .n_i = nonce_from_json(j, "n_i")};
  }
  if (type == "server_challenge_n") {
    return ServerChallengeN{.c1 = digest_from_json(j, "c1"),
                            .n_s = nonce_from_json(j, "n_s")};
  }
  if (type == "user_response_n") {
    return UserResponseN{.c2 = digest_from_json(j, "c2")};
  }
  throw ConfigError("unknown message type: " + type);
}

Json event_to_json(const ChannelEvent& event) {
  Json j;
  j["type"] = "event";
  j["seq"] = event.seq;
  j["tick"] = event.tick.ticks;
  j["kind"] = std::string(to_string(event.kind));
  j["actor"] = event.actor;
  if (event.source_seq.has_value()) {
    j["source_seq"] = *event.source_seq;
  } else {
    j["source_seq"] = nullptr;
  }
  j["message"] = message_to_json(event.message);
  return j;
}

EventKind kind_from_string(const std::string& kind) {
  if (kind == "send") return EventKind::send;
  if (kind == "deliver") return EventKind::deliver;
  if (kind == "intercept") return EventKind::intercept;
  if (kind == "inject") return EventKind::inject;
  if (kind == "drop") return EventKind::drop;
  throw ConfigError("unknown event kind: " + kind);
}

Json report_to_json(const AttackReport& report) {
  Json j;
  j["type"] = "report";
  j["attack_name"] = report.attack_name;
  j["succeeded"] = report.succeeded;
  j["guesses_tried"] = report.guesses_tried;
  if (report.recovered_password.has_value()) {
    j["recovered_password"] = report.recovered_password->str();
  } else {
    j["recovered_password"] = nullptr;
  }
  if (report.recovered_r_i.has_value()) {
    j["recovered_r_i"] = report.recovered_r_i->hex();
  } else {
    j["recovered_r_i"] = nullptr;
  }
  j["forged_messages_accepted"] = report.forged_messages_accepted;
  j["narrative"] = report.narrative;
  return j;
}

AttackReport report_from_json(const Json& j) {
  AttackReport report;
  report.attack_name = j.at("attack_name").get<std::string>();
  report.succeeded = j.at("succeeded").get<bool>();
  report.guesses_tried = j.at("guesses_tried").get<std::uint64_t>();
  if (!j.at("recovered_password").is_null()) {
    report.recovered_password =
        Password(j.at("recovered_password").get<std::string>());
  }
  if (!j.at("recovered_r_i").is_null()) {
    const auto parsed =
        Digest::from_hex(j.at("recovered_r_i").get<std::string>());
    if (!parsed) throw ConfigError("bad digest in recovered_r_i");
    report.recovered_r_i = *parsed;
  }
  report.forged_messages_accepted =
      j.at("forged_messages_accepted").get<std::uint64_t>();
  report.narrative = j.at("narrative").get<std::vector<std::string>>();
  return report;
}

Json config_to_json(const ScenarioConfig& config) {
  Json j;
  j["type"] = "config";
  j["scenario_name"] = config.scenario_name;
  j["seed"] = config.seed;
  j["freshness_window"] = config.freshness_window;
  j["clock_skews"] = Json::object();
  for (const auto& [principal, skew] : config.clock_skews) {
    j["clock_skews"][principal] = skew;
  }
  j["users"] = Json::array();
  for (const auto& [id, pw] : config.users) {
    j["users"].push_back(Json::array({id, pw}));
  }
  if (config.dictionary_path.has_value()) {
    j["dictionary_path"] = *config.dictionary_path;
  } else {
    j["dictionary_path"] = nullptr;
  }
  return j;
}

ScenarioConfig config_from_json(const Json& j) {
  ScenarioConfig config;
  config.scenario_name = j.at("scenario_name").get<std::string>();
  config.seed = j.at("seed").get<std::uint64_t>();
  config.freshness_window = j.at("freshness_window").get<std::uint64_t>();
  for (const auto& [principal, skew] : j.at("clock_skews").items()) {
    config.clock_skews[principal] = skew.get<std::int64_t>();
  }
  for (const auto& entry : j.at("users")) {
    config.users.emplace_back(entry.at(0).get<std::string>(),
                              entry.at(1).get<std::string>());
  }
  if (!j.at("dictionary_path").is_null()) {
    config.dictionary_path = j.at("dictionary_path").get<std::string>();
  }
  return config;
}

}  // namespace

std::string to_json_lines(const Transcript& transcript) {
  std::ostringstream out;
  out << config_to_json(transcript.config).dump() << '\n';
  for (const ChannelEvent& event : transcript.events) {
    out << event_to_json(event).dump() << '\n';
  }
  for (const AttackReport& report : transcript.reports) {
    out << report_to_json(report).dump() << '\n';
  }
  for (const CheckRecord& check : transcript.checks) {
    Json j;
    j["type"] = "check";
    j["name"] = check.name;
    j["held"] = check.held;
    out << j.dump() << '\n';
  }
  Json verdict;
  verdict["type"] = "verdict";
  verdict["all_pass"] = transcript.verdict.all_pass;
  verdict["failures"] = transcript.verdict.failures;
  out << verdict.dump() << '\n';
  return out.str();
}

Transcript parse_json_lines(const std::string& text) {
  Transcript transcript;
  bool saw_config = false;
  bool saw_verdict = false;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::parse_error& err) {
      throw ConfigError("transcript line " + std::to_string(line_no) +
                        ": " + err.what());
    }
    try {
      const std::string type = j.at("type").get<std::string>();
      if (type == "config") {
        transcript.config = config_from_json(j);
        saw_config = true;
      } else if (type == "event") {
        ChannelEvent event{
            .seq = j.at("seq").get<std::uint64_t>(),
            .tick = Timestamp{j.at("tick").get<std::uint64_t>()},
            .kind = kind_from_string(j.at("kind").get<std::string>()),
            .actor = j.at("actor").get<std::string>(),
            .source_seq = std::nullopt,
            .message = message_from_json(j.at("message"))};
        if (!j.at("source_seq").is_null()) {
          event.source_seq = j.at("source_seq").get<std::uint64_t>();
        }
        transcript.events.push_back(std::move(event));
      } else if (type == "report") {
        transcript.reports.push_back(report_from_json(j));
      } else if (type == "check") {
        transcript.checks.push_back(CheckRecord{
            j.at("name").get<std::string>(), j.at("held").get<bool>()});
      } else if (type == "verdict") {
        transcript.verdict.all_pass = j.at("all_pass").get<bool>();
        transcript.verdict.failures =
            j.at("failures").get<std::vector<std::string>>();
        saw_verdict = true;
      } else {
        throw ConfigError("unknown transcript line type: " + type);
      }
    } catch (const nlohmann::json::exception& err) {
      throw ConfigError("transcript line " + std::to_string(line_no) + ": " +
                        err.what());
    }
  }
  if (!saw_config || !saw_verdict) {
    throw ConfigError("transcript is missing its config or verdict line");
  }
  return transcript;
}

namespace {

std::string message_summary(const ProtocolMessage& message) {
  std::ostringstream out;
  std::visit(
      [&out](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, LoginRequestT>) {
          out << "login_request_t id=" << m.user_id.str()
              << " t=" << m.t.ticks << " c1=" << m.c1.hex().substr(0, 12)
              << "..";
        } else if constexpr (std::is_same_v<M, ServerReplyT>) {
          out << "server_reply_t t'=" << m.t_prime.ticks
              << " c2=" << m.c2.hex().substr(0, 12) << "..";
        } else if constexpr (std::is_same_v<M, LoginRequestN>) {
          out << "login_request_n id=" << m.user_id.str()
              << " n_i=" << m.n_i.hex().substr(0, 12) << "..";
        } else if constexpr (std::is_same_v<M, ServerChallengeN>) {
          out << "server_challenge_n c1=" << m.c1.hex().substr(0, 12)
              << ".. n_s=" << m.n_s.hex().substr(0, 12) << "..";
        } else if constexpr (std::is_same_v<M, UserResponseN>) {
          out << "user_response_n c2=" << m.c2.hex().substr(0, 12) << "..";
        }
      },
      message);
  return out.str();
}

}  // namespace

std::string render_report(const Transcript& transcript) {
  std::ostringstream out;
  out << "scenario: " << transcript.config.scenario_name
      << " (seed " << transcript.config.seed << ", window "
      << transcript.config.freshness_window << ")\n";
  out << "users:";
  for (const auto& [id, pw] : transcript.config.users) {
    out << " " << id;
  }
  out << "\n\nchannel events:\n";
  for (const ChannelEvent& event : transcript.events) {
    out << "  #" << event.seq << " tick=" << event.tick.ticks << " "
        << to_string(event.kind) << " " << event.actor;
    if (event.source_seq.has_value()) {
      out << " (of #" << *event.source_seq << ")";
    }
    out << ": " << message_summary(event.message) << "\n";
  }
  if (!transcript.reports.empty()) {
    out << "\nattack reports:\n";
    for (const AttackReport& report : transcript.reports) {
      out << "  " << report.attack_name << ": "
          << (report.succeeded ? "SUCCEEDED" : "failed")
          << " (forged messages accepted: "
          << report.forged_messages_accepted
          << ", guesses tried: " << report.guesses_tried << ")\n";
      if (report.recovered_password.has_value()) {
        out << "    recovered password: " << report.recovered_password->str()
            << "\n";
      }
      if (report.recovered_r_i.has_value()) {
        out << "    recovered r_i: " << report.recovered_r_i->hex() << "\n";
      }
      for (const std::string& line : report.narrative) {
        out << "    - " << line << "\n";
      }
    }
  }
  out << "\nchecks:\n";
  for (const CheckRecord& check : transcript.checks) {
    out << "  [" << (check.held ? "ok" : "FAILED") << "] " << check.name
        << "\n";
  }
  out << "\nverdict: "
      << (transcript.verdict.all_pass ? "ALL PASS" : "FAILURES") << "\n";
  for (const std::string& failure : transcript.verdict.failures) {
    out << "  failed: " << failure << "\n";
  }
  return out.str();
}

}  // namespace cardproto
