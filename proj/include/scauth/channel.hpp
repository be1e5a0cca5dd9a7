#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "scauth/transcript.hpp"
#include "scauth/wire.hpp"

namespace scauth {

using MessageId = std::uint64_t;

class ChannelError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Insecure channel between the user side and the server. Every sent message is
/// eventually delivered or dropped exactly once; the intruder may read any message in flight.
class Channel {
 public:
  Channel(const Clock& clock, Transcript& log) : clock_(clock), log_(log) {}

  MessageId send(Actor from, WireMessage msg);
  /// Intruder reads an in-flight message without removing it.
  const WireMessage& intercept(MessageId id);
  WireMessage deliver(MessageId id, Actor to);
  /// Removes an in-flight message without delivering it.
  WireMessage drop(MessageId id, Actor by = Actor::intruder);

  bool in_flight(MessageId id) const { return in_flight_.contains(id); }
  std::vector<MessageId> pending() const;

 private:
  const WireMessage& lookup(MessageId id) const;
  WireMessage settle(MessageId id, Actor actor, EventKind kind);

  const Clock& clock_;
  Transcript& log_;
  MessageId next_id_ = 1;
  std::map<MessageId, WireMessage> in_flight_;
};

}  // namespace scauth
