#pragma once

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <variant>

#include "scauth/scheme.hpp"

namespace scauth {

/// A server response on the channel, addressed to the identity whose session produced it.
struct AddressedResponse {
  Identity to;
  ServerResponse response;

  friend bool operator==(const AddressedResponse&, const AddressedResponse&) = default;
};

using WireMessage = std::variant<LoginRequest, AddressedResponse>;

class WireFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"type":"login","id":..,"c2":hex64,"t":n} and {"type":"response","id":..,"c3":hex64,"t":n}
nlohmann::json to_json(const LoginRequest& req);
nlohmann::json to_json(const AddressedResponse& resp);
nlohmann::json to_json(const WireMessage& msg);

/// Throws WireFormatError on a missing field, wrong type, bad hex or non-canonical identity.
WireMessage wire_message_from_json(const nlohmann::json& j);

}  // namespace scauth
