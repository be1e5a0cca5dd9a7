#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "scauth/crypto.hpp"

namespace scauth {

enum class Actor { user, card, server, intruder };
enum class EventKind { send, intercept, drop, deliver, verdict, state_change };

std::string_view to_string(Actor actor);
std::string_view to_string(EventKind kind);
std::optional<Actor> parse_actor(std::string_view text);
std::optional<EventKind> parse_event_kind(std::string_view text);

struct TranscriptEvent {
  std::uint64_t seq = 0;
  Timestamp time;
  Actor actor = Actor::user;
  EventKind kind = EventKind::send;
  nlohmann::json payload;

  nlohmann::json to_json() const;
  /// Throws std::invalid_argument on a malformed event object.
  static TranscriptEvent from_json(const nlohmann::json& j);

  friend bool operator==(const TranscriptEvent&, const TranscriptEvent&) = default;
};

/// Append-only event log; seq numbers start at 1 and increase by one per event.
class Transcript {
 public:
  const TranscriptEvent& append(Timestamp time, Actor actor, EventKind kind,
                                nlohmann::json payload);

  const std::vector<TranscriptEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }

 private:
  std::vector<TranscriptEvent> events_;
};

/// Simulated clock. Only moves forward.
class Clock {
 public:
  explicit Clock(Timestamp start = {}) : now_(start) {}

  Timestamp now() const { return now_; }
  /// Throws std::invalid_argument when ticks == 0.
  void step(std::uint64_t ticks = 1);
  /// Throws std::invalid_argument when target is in the past.
  void advance_to(Timestamp target);

 private:
  Timestamp now_;
};

}  // namespace scauth
