#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cardproto/adversary.hpp"
#include "cardproto/channel.hpp"
#include "cardproto/errors.hpp"

namespace cardproto {

/// Everything a scenario run depends on. The seed fully determines the
/// master secret and every nonce, so identical configs yield octet-identical
/// transcripts.
struct ScenarioConfig {
  std::uint64_t seed = 1;
  std::uint64_t freshness_window = 60;
  // Principal name ("user", "server", "attacker", or a concrete user id)
  // to signed tick offset from the scenario's base clock.
  std::map<std::string, std::int64_t> clock_skews;
  std::vector<std::pair<std::string, std::string>> users;  // (id, password)
  std::string scenario_name;
  std::optional<std::string> dictionary_path;
};

/// One expectation the scenario registered, and whether it held.
struct CheckRecord {
  std::string name;
  bool held = false;
};

struct Verdict {
  bool all_pass = true;
  std::vector<std::string> failures;  // names of checks that did not hold
};

struct Transcript {
  ScenarioConfig config;  // effective config (defaults resolved)
  std::vector<ChannelEvent> events;
  std::vector<AttackReport> reports;
  std::vector<CheckRecord> checks;
  Verdict verdict;
};

/// Names of the built-in scenarios, in listing order.
const std::vector<std::string>& scenario_names();

/// Runs the named scenario deterministically from config.seed.
/// Throws ConfigError for an unknown name, invalid users, or a missing
/// dictionary where one is required.
Transcript run_scenario(const ScenarioConfig& config);

/// JSON-lines form: one object per line — config, then events, then
/// reports, then checks, then the verdict. Digests and nonces hex-encoded,
/// timestamps decimal.
std::string to_json_lines(const Transcript& transcript);

/// Parses what to_json_lines produced. Throws ConfigError on malformed
/// input.
Transcript parse_json_lines(const std::string& text);

/// Human-readable rendering of a transcript, attack narratives included.
std::string render_report(const Transcript& transcript);

}  // namespace cardproto
