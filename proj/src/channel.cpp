#include "scauth/channel.hpp"

#include <string>

namespace scauth {

MessageId Channel::send(Actor from, WireMessage msg) {
  const MessageId id = next_id_++;
  log_.append(clock_.now(), from, EventKind::send, {{"msg", id}, {"message", to_json(msg)}});
  in_flight_.emplace(id, std::move(msg));
  return id;
}

const WireMessage& Channel::lookup(MessageId id) const {
  const auto it = in_flight_.find(id);
  if (it == in_flight_.end()) {
    throw ChannelError("message " + std::to_string(id) + " is not in flight");
  }
  return it->second;
}

const WireMessage& Channel::intercept(MessageId id) {
  const auto& msg = lookup(id);
  log_.append(clock_.now(), Actor::intruder, EventKind::intercept,
              {{"msg", id}, {"message", to_json(msg)}});
  return msg;
}

WireMessage Channel::settle(MessageId id, Actor actor, EventKind kind) {
  lookup(id);
  auto node = in_flight_.extract(id);
  log_.append(clock_.now(), actor, kind, {{"msg", id}});
  return std::move(node.mapped());
}

WireMessage Channel::deliver(MessageId id, Actor to) { return settle(id, to, EventKind::deliver); }

WireMessage Channel::drop(MessageId id, Actor by) { return settle(id, by, EventKind::drop); }

std::vector<MessageId> Channel::pending() const {
  std::vector<MessageId> ids;
  for (const auto& [id, msg] : in_flight_) ids.push_back(id);
  return ids;
}

}  // namespace scauth
