#include "scauth/wire.hpp"

namespace scauth {

using nlohmann::json;

json to_json(const LoginRequest& req) {
  return json{{"type", "login"}, {"id", req.id.str()}, {"c2", req.c2.to_hex()},
              {"t", req.t_u.ticks}};
}

json to_json(const AddressedResponse& resp) {
  return json{{"type", "response"},
              {"id", resp.to.str()},
              {"c3", resp.response.c3.to_hex()},
              {"t", resp.response.t_s.ticks}};
}

json to_json(const WireMessage& msg) {
  return std::visit([](const auto& m) { return to_json(m); }, msg);
}

namespace {

const json& field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw WireFormatError(std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_string()) throw WireFormatError(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

Block block_field(const json& j, const char* name) {
  try {
    return Block::from_hex(string_field(j, name));
  } catch (const std::invalid_argument& e) {
    throw WireFormatError(std::string("field '") + name + "': " + e.what());
  }
}

Timestamp time_field(const json& j) {
  const auto& v = field(j, "t");
  if (!v.is_number_unsigned()) throw WireFormatError("field 't' must be a non-negative integer");
  return Timestamp{v.get<std::uint64_t>()};
}

Identity identity_field(const json& j) {
  auto id = string_field(j, "id");
  if (!Identity::is_canonical(id)) throw WireFormatError("field 'id' is not a canonical identity");
  return Identity{std::move(id)};
}

}  // namespace

WireMessage wire_message_from_json(const json& j) {
  if (!j.is_object()) throw WireFormatError("wire message must be a JSON object");
  const auto type = string_field(j, "type");
  if (type == "login") {
    return LoginRequest{identity_field(j), block_field(j, "c2"), time_field(j)};
  }
  if (type == "response") {
    return AddressedResponse{identity_field(j), ServerResponse{block_field(j, "c3"), time_field(j)}};
  }
  throw WireFormatError("unknown message type '" + type + "'");
}

}  // namespace scauth
