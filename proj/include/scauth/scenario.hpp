#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "scauth/adversary.hpp"
#include "scauth/transcript.hpp"

namespace scauth {

enum class ScenarioName { honest, offline_guess, outsider_change, insider_change, parallel_session };

std::string_view to_string(ScenarioName name);
std::optional<ScenarioName> parse_scenario_name(std::string_view text);
bool needs_dictionary(ScenarioName name);

struct ScenarioConfig {
  ScenarioName scenario = ScenarioName::honest;
  std::uint64_t seed = 0;
  FreshnessWindow window = kDefaultWindow;
  std::optional<std::string> dictionary;
  /// Ticks between the intercepted server response and the forged login (parallel-session only).
  std::uint64_t relay_delay = 1;
  InsiderEntry insider_entry = InsiderEntry::supply_v;

  nlohmann::json to_json() const;
  /// Throws ScenarioError(invalid_config) on malformed input.
  static ScenarioConfig from_json(const nlohmann::json& j);

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

class ScenarioError : public std::runtime_error {
 public:
  enum class Code { invalid_config, missing_dictionary };

  ScenarioError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Timeline anchors, in ticks.
struct Timeline {
  static constexpr Timestamp registration{0};
  static constexpr Timestamp login{10};
  static constexpr Timestamp server_receipt{11};
  static constexpr Timestamp attacker_login{20};
  static constexpr Timestamp victim_retry{30};
};

inline constexpr std::string_view kVictimId = "alice";

struct ScenarioResult {
  ScenarioConfig config;
  Transcript transcript;
  /// "accept" / "reject" for the honest run, "attack-succeeded" / "attack-failed" otherwise.
  std::string outcome;
  /// True when the run shows what it was meant to show.
  bool as_expected = false;
};

/// Runs a scenario deterministically from its config. Throws ScenarioError.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// JSON Lines: the config object on the first line, then one event per line.
std::string to_jsonl(const ScenarioConfig& config, const Transcript& transcript);
std::string to_jsonl(const ScenarioResult& result);
std::string render_human(const Transcript& transcript);

class TranscriptParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReplayReport {
  bool verified = false;
  /// seq of the first event that differs; set only on mismatch.
  std::optional<std::uint64_t> mismatch_seq;
  std::string detail;
};

/// Re-runs the embedded config and compares event by event.
/// Throws TranscriptParseError on malformed input; ScenarioError if the embedded config cannot run.
ReplayReport replay_transcript(std::string_view jsonl);
ReplayReport replay_transcript_file(const std::filesystem::path& path);

}  // namespace scauth
