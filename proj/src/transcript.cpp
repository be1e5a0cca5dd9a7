#include "scauth/transcript.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace scauth {

namespace {

constexpr std::array<std::string_view, 4> kActorNames{"user", "card", "server", "intruder"};
constexpr std::array<std::string_view, 6> kKindNames{"send",    "intercept", "drop",
                                                     "deliver", "verdict",   "state-change"};

template <typename Enum, std::size_t N>
std::optional<Enum> parse_name(const std::array<std::string_view, N>& names,
                               std::string_view text) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == text) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Actor actor) { return kActorNames.at(static_cast<std::size_t>(actor)); }

std::string_view to_string(EventKind kind) {
  return kKindNames.at(static_cast<std::size_t>(kind));
}

std::optional<Actor> parse_actor(std::string_view text) {
  return parse_name<Actor>(kActorNames, text);
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
  return parse_name<EventKind>(kKindNames, text);
}

nlohmann::json TranscriptEvent::to_json() const {
  return nlohmann::json{{"seq", seq},
                        {"time", time.ticks},
                        {"actor", std::string(to_string(actor))},
                        {"kind", std::string(to_string(kind))},
                        {"payload", payload}};
}

TranscriptEvent TranscriptEvent::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("event must be a JSON object");
  for (const char* key : {"seq", "time", "actor", "kind", "payload"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("event missing '") + key + "'");
  }
  if (!j["seq"].is_number_unsigned() || !j["time"].is_number_unsigned()) {
    throw std::invalid_argument("event seq and time must be non-negative integers");
  }
  if (!j["actor"].is_string() || !j["kind"].is_string()) {
    throw std::invalid_argument("event actor and kind must be strings");
  }
  const auto actor = parse_actor(j["actor"].get<std::string>());
  const auto kind = parse_event_kind(j["kind"].get<std::string>());
  if (!actor || !kind) throw std::invalid_argument("unknown event actor or kind");
  return TranscriptEvent{j["seq"].get<std::uint64_t>(), Timestamp{j["time"].get<std::uint64_t>()},
                         *actor, *kind, j["payload"]};
}

const TranscriptEvent& Transcript::append(Timestamp time, Actor actor, EventKind kind,
                                          nlohmann::json payload) {
  if (!events_.empty() && time < events_.back().time) {
    throw std::logic_error("transcript time went backwards");
  }
  events_.push_back(TranscriptEvent{events_.size() + 1, time, actor, kind, std::move(payload)});
  return events_.back();
}

void Clock::step(std::uint64_t ticks) {
  if (ticks == 0) throw std::invalid_argument("clock step must be at least one tick");
  now_.ticks += ticks;
}

void Clock::advance_to(Timestamp target) {
  if (target < now_) throw std::invalid_argument("clock cannot rewind");
  now_ = target;
}

}  // namespace scauth
