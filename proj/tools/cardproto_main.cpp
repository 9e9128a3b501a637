// cardproto CLI: runs named protocol/attack scenarios deterministically,
// lists them, and renders recorded transcripts.
//
// Exit codes: 0 when the scenario's expectations all held (attack scenarios
// expect their attacks to succeed), 1 when the verdict reports failures,
// 2 for configuration problems.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cardproto/scenario.hpp"

namespace {

using cardproto::ConfigError;
using cardproto::ScenarioConfig;
using cardproto::Transcript;

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return static_cast<std::uint64_t>(value);
  } catch (const std::exception&) {
    throw ConfigError("invalid " + what + ": '" + text + "'");
  }
}

void apply_skew_flags(ScenarioConfig& config,
                      const std::vector<std::string>& skews) {
  for (const std::string& entry : skews) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size()) {
      throw ConfigError("invalid --skew '" + entry +
                        "', expected PRINCIPAL=TICKS");
    }
    const std::string principal = entry.substr(0, eq);
    const std::string ticks = entry.substr(eq + 1);
    try {
      std::size_t used = 0;
      const long long value = std::stoll(ticks, &used);
      if (used != ticks.size()) throw std::invalid_argument(ticks);
      config.clock_skews[principal] = static_cast<std::int64_t>(value);
    } catch (const std::exception&) {
      throw ConfigError("invalid --skew '" + entry +
                        "', expected PRINCIPAL=TICKS");
    }
  }
}

int run_command(const std::string& scenario, std::uint64_t seed,
                std::uint64_t window, const std::vector<std::string>& skews,
                const std::string& dict, const std::string& out_path) {
  ScenarioConfig config;
  config.scenario_name = scenario;
  config.seed = seed;
  config.freshness_window = window;
  apply_skew_flags(config, skews);
  if (!dict.empty()) config.dictionary_path = dict;

  // The environment variable wins over the flag.
  if (const char* env_seed = std::getenv("CARDPROTO_SEED")) {
    config.seed = parse_u64(env_seed, "CARDPROTO_SEED");
  }

  const Transcript transcript = cardproto::run_scenario(config);
  const std::string lines = cardproto::to_json_lines(transcript);

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw ConfigError("cannot write transcript to " + out_path);
    }
    out << lines;
  } else {
    std::cout << lines;
  }

  if (transcript.verdict.all_pass) {
    std::cerr << "verdict: all " << transcript.checks.size()
              << " checks passed\n";
    return 0;
  }
  std::cerr << "verdict: " << transcript.verdict.failures.size()
            << " check(s) failed:\n";
  for (const std::string& failure : transcript.verdict.failures) {
    std::cerr << "  " << failure << "\n";
  }
  return 1;
}

int report_command(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open transcript: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const Transcript transcript = cardproto::parse_json_lines(buffer.str());
  std::cout << cardproto::render_report(transcript);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"protocol lab for smart-card authentication schemes"};
  app.require_subcommand(1);

  std::string scenario;
  std::uint64_t seed = 1;
  std::uint64_t window = 60;
  std::vector<std::string> skews;
  std::string dict;
  std::string out_path;

  CLI::App* run = app.add_subcommand("run", "run a named scenario");
  run->add_option("scenario", scenario, "scenario name (see `list`)")
      ->required();
  run->add_option("--seed", seed, "deterministic seed (default 1)");
  run->add_option("--window", window, "freshness window in ticks");
  run->add_option("--skew", skews,
                  "clock skew PRINCIPAL=TICKS (repeatable; principals: "
                  "user, server, attacker, or a user id)");
  run->add_option("--dict", dict, "dictionary file for guessing scenarios");
  run->add_option("--out", out_path, "write the transcript here instead of stdout");

  CLI::App* list = app.add_subcommand("list", "list built-in scenarios");

  std::string transcript_path;
  CLI::App* report = app.add_subcommand("report", "render a recorded transcript");
  report->add_option("transcript", transcript_path, "transcript JSON-lines file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }

  try {
    if (run->parsed()) {
      return run_command(scenario, seed, window, skews, dict, out_path);
    }
    if (list->parsed()) {
      for (const std::string& name : cardproto::scenario_names()) {
        std::cout << name << "\n";
      }
      return 0;
    }
    if (report->parsed()) {
      return report_command(transcript_path);
    }
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const cardproto::ScenarioError& err) {
    std::cerr << "scenario error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
