#include "scauth/scenario.hpp"

#include <array>
#include <fstream>
#include <random>
#include <sstream>

#include "scauth/channel.hpp"

namespace scauth {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 5> kScenarioNames{
    "honest", "offline-guess", "outsider-change", "insider-change", "parallel-session"};

json verdict_payload(std::string_view subject, bool accepted, std::optional<RejectReason> reason) {
  json payload{{"subject", subject}, {"result", accepted ? "accept" : "reject"}};
  if (reason) payload["reason"] = to_string(*reason);
  return payload;
}

template <typename T>
json verdict_payload(std::string_view subject, const Verdict<T>& verdict) {
  return verdict_payload(subject, verdict.accepted(),
                         verdict.accepted() ? std::nullopt : std::optional{verdict.reason()});
}

/// Seeded source for x, b and passwords. Draw order is fixed; do not reorder calls.
class SeededSource {
 public:
  explicit SeededSource(std::uint64_t seed) : engine_(seed) {}

  Block block() {
    Block::Bytes bytes{};
    for (std::size_t word = 0; word < kBlockLen / 8; ++word) {
      const std::uint64_t value = engine_();
      for (std::size_t i = 0; i < 8; ++i) {
        bytes[word * 8 + i] = static_cast<std::uint8_t>(value >> (56 - 8 * i));
      }
    }
    return Block{bytes};
  }

  std::string word(std::size_t length) {
    static constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
    std::string out;
    for (std::size_t i = 0; i < length; ++i) out.push_back(kAlphabet[engine_() % kAlphabet.size()]);
    return out;
  }

  std::size_t index(std::size_t size) { return static_cast<std::size_t>(engine_() % size); }

 private:
  std::mt19937_64 engine_;
};

struct LoginSession {
  LoginRequest request;
  MessageId request_msg = 0;
  bool server_accepted = false;
  std::optional<ServerResponse> response;
  bool mutual_auth_accepted = false;
};

/// Shared state of one scenario run.
class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& config) : config_(config), channel_(clock_, log_) {}

  Transcript& log() { return log_; }
  Clock& clock() { return clock_; }
  Channel& channel() { return channel_; }
  FreshnessWindow window() const { return config_.window; }

  void note(Actor actor, EventKind kind, json payload) {
    log_.append(clock_.now(), actor, kind, std::move(payload));
  }

  /// Login at `at`, server receipt one tick later. `side` is whoever holds the card.
  LoginSession login_session(const AuthServer& server, const SmartCard& card, const Password& pw,
                             Timestamp at, Actor side, bool eavesdrop) {
    clock_.advance_to(at);
    auto [req, ctx] = login(card, pw, clock_.now());
    LoginSession session{req, 0, false, std::nullopt, false};
    session.request_msg = channel_.send(side, req);
    if (eavesdrop) channel_.intercept(session.request_msg);

    clock_.step();
    const auto delivered = std::get<LoginRequest>(channel_.deliver(session.request_msg, Actor::server));
    const auto verdict = server.verify_login(delivered, clock_.now(), config_.window);
    note(Actor::server, EventKind::verdict, verdict_payload("login", verdict));
    session.server_accepted = verdict.accepted();
    if (!verdict.accepted()) return session;

    const MessageId resp_msg = channel_.send(Actor::server, AddressedResponse{req.id, verdict.value()});
    if (eavesdrop) channel_.intercept(resp_msg);
    const auto resp = std::get<AddressedResponse>(channel_.deliver(resp_msg, side)).response;
    session.response = resp;
    const auto mutual = user_verify_response(ctx, resp, config_.window);
    note(side, EventKind::verdict, verdict_payload("mutual-auth", mutual));
    session.mutual_auth_accepted = mutual.accepted();
    return session;
  }

  void finish(std::string_view scenario, const std::string& outcome, Actor actor) {
    if (!channel_.pending().empty()) throw std::logic_error("scenario left messages in flight");
    note(actor, EventKind::verdict,
         {{"subject", "scenario"}, {"scenario", scenario}, {"outcome", outcome}});
  }

 private:
  const ScenarioConfig& config_;
  Clock clock_;
  Transcript log_;
  Channel channel_;
};

struct Enrolment {
  Identity id{std::string(kVictimId)};
  Block x;
  Block b;
  Password victim_pw{"placeholder"};
  Password attacker_pw{"placeholder"};
  Block pw_s;
  Registration registration;
};

Enrolment draw_enrolment(std::uint64_t seed, const std::optional<Dictionary>& dict) {
  SeededSource source(seed);
  Enrolment e;
  e.x = source.block();
  e.b = source.block();
  e.victim_pw = dict ? dict->candidates()[source.index(dict->size())] : Password{source.word(10)};
  e.attacker_pw = Password{"evil-" + source.word(6)};
  return e;
}

/// Registration phase at tick 0: PW_S, account entry, card issue.
SmartCard enrol(Simulation& sim, AuthServer& server, Enrolment& e) {
  sim.clock().advance_to(Timeline::registration);
  e.pw_s = user_prepare_registration(e.victim_pw, e.b);
  sim.note(Actor::user, EventKind::state_change,
           {{"step", "prepare-registration"}, {"id", e.id.str()}, {"pw_s", e.pw_s.to_hex()}});
  e.registration = server.register_user(e.id, e.pw_s);
  sim.note(Actor::server, EventKind::state_change,
           {{"step", "register"},
            {"id", e.id.str()},
            {"n", e.registration.n},
            {"v", e.registration.v.to_hex()},
            {"r", e.registration.r.to_hex()}});
  SmartCard card = issue_card(e.id, e.registration, e.b);
  sim.note(Actor::card, EventKind::state_change,
           {{"step", "issue-card"},
            {"v", card.v().to_hex()},
            {"r", card.r().to_hex()},
            {"b", card.b().to_hex()}});
  return card;
}

std::optional<GuessResult> breach_and_guess(Simulation& sim, const SmartCard& card,
                                            const LoginRequest& intercepted, const Dictionary& dict) {
  const auto secrets = BreachedCardSecrets::extract(card);
  sim.note(Actor::intruder, EventKind::state_change,
           {{"step", "breach-card"},
            {"v", secrets.v.to_hex()},
            {"r", secrets.r.to_hex()},
            {"b", secrets.b.to_hex()}});
  auto guess = offline_guess(secrets, intercepted, dict);
  json payload{{"step", "offline-guess"}, {"dictionary_size", dict.size()}};
  if (guess) {
    payload["found"] = guess->password.str();
    payload["probes"] = guess->probes;
    payload["c1"] = guess->c1.to_hex();
  } else {
    payload["found"] = nullptr;
    payload["probes"] = dict.size();
  }
  sim.note(Actor::intruder, EventKind::state_change, std::move(payload));
  return guess;
}

void record_card_change(Simulation& sim, const Verdict<SmartCard>& verdict, SmartCard& card) {
  sim.note(Actor::card, EventKind::verdict, verdict_payload("change-password", verdict));
  if (!verdict.accepted()) return;
  card = verdict.value();
  sim.note(Actor::card, EventKind::state_change, {{"step", "replace-r"}, {"r", card.r().to_hex()}});
}

std::string attack_outcome(bool succeeded) {
  return succeeded ? "attack-succeeded" : "attack-failed";
}

ScenarioResult run_loaded(const ScenarioConfig& config, const std::optional<Dictionary>& dict) {
  Simulation sim(config);
  Enrolment e = draw_enrolment(config.seed, dict);
  AuthServer server(e.x);
  SmartCard card = enrol(sim, server, e);
  const auto name = to_string(config.scenario);

  ScenarioResult result;
  result.config = config;
  auto conclude = [&](bool success, Actor actor = Actor::intruder) {
    result.outcome = attack_outcome(success);
    result.as_expected = success;
    sim.finish(name, result.outcome, actor);
  };

  switch (config.scenario) {
    case ScenarioName::honest: {
      const auto s = sim.login_session(server, card, e.victim_pw, Timeline::login, Actor::user, false);
      const bool ok = s.server_accepted && s.mutual_auth_accepted;
      result.outcome = ok ? "accept" : "reject";
      result.as_expected = ok;
      sim.finish(name, result.outcome, Actor::user);
      break;
    }
    case ScenarioName::offline_guess: {
      const auto s = sim.login_session(server, card, e.victim_pw, Timeline::login, Actor::user, true);
      const auto guess = breach_and_guess(sim, card, s.request, *dict);
      conclude(guess && guess->password == e.victim_pw && guess->c1 == card.v());
      break;
    }
    case ScenarioName::outsider_change: {
      const auto s = sim.login_session(server, card, e.victim_pw, Timeline::login, Actor::user, true);
      const auto guess = breach_and_guess(sim, card, s.request, *dict);
      if (!guess) {
        conclude(false);
        break;
      }
      sim.clock().step();
      sim.note(Actor::intruder, EventKind::state_change,
               {{"step", "request-password-change"}, {"new_password", e.attacker_pw.str()}});
      const auto change = outsider_change_password(card, guess->password, e.attacker_pw);
      record_card_change(sim, change, card);
      if (!change.accepted()) {
        conclude(false);
        break;
      }
      const auto attacker = sim.login_session(server, card, e.attacker_pw, Timeline::attacker_login,
                                              Actor::intruder, false);
      const auto victim =
          sim.login_session(server, card, e.victim_pw, Timeline::victim_retry, Actor::user, false);
      conclude(attacker.server_accepted && !victim.server_accepted);
      break;
    }
    case ScenarioName::insider_change: {
      const InsiderKnowledge knowledge{e.pw_s, e.registration.v, e.registration.r};
      sim.note(Actor::intruder, EventKind::state_change,
               {{"step", "insider-records"},
                {"pw_s", knowledge.pw_s.to_hex()},
                {"v", knowledge.v.to_hex()},
                {"r", knowledge.r.to_hex()}});
      sim.login_session(server, card, e.victim_pw, Timeline::login, Actor::user, false);
      sim.clock().step();
      sim.note(Actor::intruder, EventKind::state_change,
               {{"step", "insider-entry"},
                {"mode", to_string(config.insider_entry)},
                {"new_password", e.attacker_pw.str()}});
      const auto change =
          insider_change_password(card, knowledge, e.attacker_pw, config.insider_entry);
      record_card_change(sim, change, card);
      if (!change.accepted()) {
        conclude(false);
        break;
      }
      const auto victim =
          sim.login_session(server, card, e.victim_pw, Timeline::victim_retry, Actor::user, false);
      conclude(!victim.server_accepted);
      break;
    }
    case ScenarioName::parallel_session: {
      const auto s = sim.login_session(server, card, e.victim_pw, Timeline::login, Actor::user, true);
      if (!s.response) {
        conclude(false);
        break;
      }
      sim.clock().step(config.relay_delay);
      const LoginRequest forged = parallel_session_forge(s.request, *s.response);
      const MessageId forged_msg = sim.channel().send(Actor::intruder, forged);
      const auto delivered =
          std::get<LoginRequest>(sim.channel().deliver(forged_msg, Actor::server));
      const auto verdict = server.verify_login(delivered, sim.clock().now(), config.window);
      sim.note(Actor::server, EventKind::verdict, verdict_payload("login", verdict));
      if (verdict.accepted()) {
        // C4 goes back towards the victim; the intruder swallows it.
        const MessageId c4 =
            sim.channel().send(Actor::server, AddressedResponse{forged.id, verdict.value()});
        intercept_and_drop(sim.channel(), c4);
      }
      conclude(verdict.accepted());
      break;
    }
  }
  result.transcript = sim.log();
  return result;
}

}  // namespace

std::string_view to_string(ScenarioName name) {
  return kScenarioNames.at(static_cast<std::size_t>(name));
}

std::optional<ScenarioName> parse_scenario_name(std::string_view text) {
  for (std::size_t i = 0; i < kScenarioNames.size(); ++i) {
    if (kScenarioNames[i] == text) return static_cast<ScenarioName>(i);
  }
  return std::nullopt;
}

bool needs_dictionary(ScenarioName name) {
  return name == ScenarioName::offline_guess || name == ScenarioName::outsider_change;
}

json ScenarioConfig::to_json() const {
  return json{{"scenario", to_string(scenario)},
              {"seed", seed},
              {"window", window.ticks},
              {"dictionary", dictionary ? json(*dictionary) : json(nullptr)},
              {"relay_delay", relay_delay},
              {"insider_entry", to_string(insider_entry)}};
}

ScenarioConfig ScenarioConfig::from_json(const json& j) {
  auto invalid = [](const std::string& what) {
    return ScenarioError(ScenarioError::Code::invalid_config, what);
  };
  if (!j.is_object()) throw invalid("config must be a JSON object");
  ScenarioConfig config;
  const auto name_it = j.find("scenario");
  if (name_it == j.end() || !name_it->is_string()) throw invalid("config needs a scenario name");
  const auto name = parse_scenario_name(name_it->get<std::string>());
  if (!name) throw invalid("unknown scenario '" + name_it->get<std::string>() + "'");
  config.scenario = *name;

  auto read_uint = [&](const char* key, std::uint64_t& out) {
    const auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_number_unsigned()) throw invalid(std::string("'") + key + "' must be a non-negative integer");
    out = it->get<std::uint64_t>();
  };
  read_uint("seed", config.seed);
  read_uint("window", config.window.ticks);
  read_uint("relay_delay", config.relay_delay);

  if (const auto it = j.find("dictionary"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw invalid("'dictionary' must be a string or null");
    config.dictionary = it->get<std::string>();
  }
  if (const auto it = j.find("insider_entry"); it != j.end()) {
    const auto entry = it->is_string() ? parse_insider_entry(it->get<std::string>()) : std::nullopt;
    if (!entry) throw invalid("'insider_entry' must be supply-v or supply-pw-s");
    config.insider_entry = *entry;
  }
  return config;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  if (config.window.ticks == 0) {
    throw ScenarioError(ScenarioError::Code::invalid_config, "window must be at least 1 tick");
  }
  if (config.relay_delay == 0) {
    throw ScenarioError(ScenarioError::Code::invalid_config, "relay delay must be at least 1 tick");
  }
  std::optional<Dictionary> dict;
  if (needs_dictionary(config.scenario)) {
    if (!config.dictionary) {
      throw ScenarioError(ScenarioError::Code::missing_dictionary,
                          std::string(to_string(config.scenario)) + " needs a dictionary");
    }
    try {
      dict = Dictionary::load(*config.dictionary);
    } catch (const DictionaryError& e) {
      throw ScenarioError(ScenarioError::Code::missing_dictionary, e.what());
    }
  }
  return run_loaded(config, dict);
}

std::string to_jsonl(const ScenarioConfig& config, const Transcript& transcript) {
  std::string out = json{{"config", config.to_json()}}.dump();
  out.push_back('\n');
  for (const auto& event : transcript.events()) {
    out += event.to_json().dump();
    out.push_back('\n');
  }
  return out;
}

std::string to_jsonl(const ScenarioResult& result) {
  return to_jsonl(result.config, result.transcript);
}

std::string render_human(const Transcript& transcript) {
  std::ostringstream out;
  for (const auto& e : transcript.events()) {
    out << "#" << e.seq << " t=" << e.time.ticks << " " << to_string(e.actor) << " "
        << to_string(e.kind) << " " << e.payload.dump() << "\n";
  }
  return out.str();
}

ReplayReport replay_transcript(std::string_view jsonl) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(jsonl)};
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  if (lines.empty()) throw TranscriptParseError("transcript is empty");

  std::vector<json> parsed;
  parsed.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      parsed.push_back(json::parse(lines[i]));
    } catch (const json::parse_error& e) {
      throw TranscriptParseError("line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  if (!parsed.front().is_object() || !parsed.front().contains("config")) {
    throw TranscriptParseError("first line must hold the scenario config");
  }
  for (std::size_t i = 1; i < parsed.size(); ++i) {
    try {
      TranscriptEvent::from_json(parsed[i]);
    } catch (const std::invalid_argument& e) {
      throw TranscriptParseError("line " + std::to_string(i + 1) + ": " + e.what());
    }
  }

  const auto config = ScenarioConfig::from_json(parsed.front()["config"]);
  const auto rerun = run_scenario(config);
  const auto& events = rerun.transcript.events();
  const std::size_t recorded = lines.size() - 1;

  for (std::size_t i = 0; i < std::min(recorded, events.size()); ++i) {
    if (lines[i + 1] != events[i].to_json().dump()) {
      return ReplayReport{false, events[i].seq, "event differs from re-execution"};
    }
  }
  if (recorded != events.size()) {
    const std::uint64_t seq = std::min(recorded, events.size()) + 1;
    return ReplayReport{false, seq,
                        "recorded " + std::to_string(recorded) + " events, re-execution produced " +
                            std::to_string(events.size())};
  }
  return ReplayReport{true, std::nullopt, "verified"};
}

ReplayReport replay_transcript_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TranscriptParseError("cannot open transcript '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return replay_transcript(buffer.str());
}

}  // namespace scauth
