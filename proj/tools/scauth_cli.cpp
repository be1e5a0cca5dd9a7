// Command-line front end: run scenarios, replay transcripts, print golden vectors.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "scauth/crypto.hpp"
#include "scauth/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitContrary = 1;
constexpr int kExitUsage = 2;

enum class Format { human, json };

struct DemoOptions {
  std::string scenario;
  std::uint64_t seed = 0;
  std::uint64_t window = scauth::kDefaultWindow.ticks;
  std::string dictionary;
  std::string out;
  std::uint64_t relay_delay = 1;
  std::string insider_entry = "supply-v";
  Format format = Format::json;
};

int run_demo(const DemoOptions& opts) {
  scauth::ScenarioConfig config;
  config.scenario = *scauth::parse_scenario_name(opts.scenario);
  config.seed = opts.seed;
  config.window = scauth::FreshnessWindow{opts.window};
  config.relay_delay = opts.relay_delay;
  config.insider_entry = *scauth::parse_insider_entry(opts.insider_entry);
  if (!opts.dictionary.empty()) config.dictionary = opts.dictionary;

  if (scauth::needs_dictionary(config.scenario) && !config.dictionary) {
    std::cerr << "error: " << opts.scenario << " requires --dictionary\n";
    return kExitUsage;
  }

  scauth::ScenarioResult result;
  try {
    result = scauth::run_scenario(config);
  } catch (const scauth::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == scauth::ScenarioError::Code::invalid_config ? kExitUsage : kExitContrary;
  }

  const std::string body = opts.format == Format::json ? scauth::to_jsonl(result)
                                                       : scauth::render_human(result.transcript);
  if (opts.out.empty()) {
    std::cout << body << std::flush;
  } else {
    std::ofstream file(opts.out, std::ios::binary | std::ios::trunc);
    file << body;
    if (!file.flush()) {
      std::cerr << "error: cannot write " << opts.out << "\n";
      return kExitContrary;
    }
  }
  std::cerr << "scenario " << opts.scenario << ": " << result.outcome << " ("
            << result.transcript.size() << " events)\n";
  return result.as_expected ? kExitOk : kExitContrary;
}

int run_replay(const std::string& path) {
  try {
    const auto report = scauth::replay_transcript_file(path);
    if (report.verified) {
      std::cout << "verified\n";
      return kExitOk;
    }
    std::cout << "mismatch at seq " << *report.mismatch_seq << ": " << report.detail << "\n";
  } catch (const scauth::TranscriptParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const scauth::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitContrary;
}

int run_vectors(Format format) {
  using scauth::Block;
  const std::vector<std::pair<std::string, Block>> vectors{
      {"f(zero-block)", scauth::one_way(Block::zero())},
      {"f(ff-block)", scauth::one_way(Block::filled(0xff))},
      {"encode(identity alice)", scauth::encode(scauth::Identity{"alice"})},
      {"encode(eid alice,0)", scauth::encode(scauth::Identity{"alice"}, 0)},
      {"encode(eid alice,1)", scauth::encode(scauth::Identity{"alice"}, 1)},
      {"encode(password pw1)", scauth::encode(scauth::Password{"pw1"})},
      {"encode(timestamp 10)", scauth::encode(scauth::Timestamp{10})},
  };
  if (format == Format::json) {
    for (const auto& [name, block] : vectors) {
      std::cout << nlohmann::json{{"name", name}, {"hex", block.to_hex()}}.dump() << "\n";
    }
  } else {
    for (const auto& [name, block] : vectors) std::cout << name << "  " << block.to_hex() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smart-card remote authentication scheme simulator"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"human", Format::human}, {"json", Format::json}};

  DemoOptions demo;
  auto* demo_cmd = app.add_subcommand("demo", "Run one scenario and write its transcript");
  demo_cmd->add_option("scenario", demo.scenario, "Scenario to run")
      ->required()
      ->check(CLI::IsMember(
          {"honest", "offline-guess", "outsider-change", "insider-change", "parallel-session"}));
  demo_cmd->add_option("--seed", demo.seed, "Seed for x, b and passwords");
  demo_cmd->add_option("--window", demo.window, "Freshness window in ticks")
      ->check(CLI::PositiveNumber);
  demo_cmd->add_option("--dictionary", demo.dictionary, "Password dictionary, one per line");
  demo_cmd->add_option("--out", demo.out, "Transcript output path (default stdout)");
  demo_cmd->add_option("--format", demo.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  demo_cmd->add_option("--relay-delay", demo.relay_delay, "Ticks before the forged login")
      ->check(CLI::PositiveNumber);
  demo_cmd->add_option("--insider-entry", demo.insider_entry, "Insider entry mode")
      ->check(CLI::IsMember({"supply-v", "supply-pw-s"}));

  std::string replay_path;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a transcript and compare it");
  replay_cmd->add_option("file", replay_path, "Transcript file")->required();

  Format vectors_format = Format::human;
  auto* vectors_cmd = app.add_subcommand("vectors", "Print pinned digest vectors");
  vectors_cmd->add_option("--format", vectors_format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*demo_cmd) return run_demo(demo);
  if (*replay_cmd) return run_replay(replay_path);
  if (*vectors_cmd) return run_vectors(vectors_format);
  return kExitUsage;
}
