#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "scauth/crypto.hpp"

namespace scauth {

/// Maximum tolerated gap, in ticks, between a message timestamp and the receiver's clock.
struct FreshnessWindow {
  std::uint64_t ticks = 5;

  friend bool operator==(const FreshnessWindow&, const FreshnessWindow&) = default;
};

inline constexpr FreshnessWindow kDefaultWindow{5};

enum class RejectReason {
  unknown_identity,
  stale_timestamp,
  bad_authenticator,
  wrong_old_password,
};

std::string_view to_string(RejectReason reason);

/// Empty payload for verdicts that carry nothing on acceptance.
struct Accepted {
  friend bool operator==(const Accepted&, const Accepted&) = default;
};

/// Accept-with-value or reject-with-reason. Rejection is a normal protocol outcome, not an error.
template <typename T>
class Verdict {
 public:
  static Verdict accept(T value) { return Verdict{std::move(value)}; }
  static Verdict reject(RejectReason reason) { return Verdict{reason}; }

  bool accepted() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return accepted(); }

  const T& value() const {
    if (!accepted()) throw std::logic_error("verdict was a rejection");
    return std::get<T>(state_);
  }
  RejectReason reason() const {
    if (accepted()) throw std::logic_error("verdict was an acceptance");
    return std::get<RejectReason>(state_);
  }

 private:
  explicit Verdict(T value) : state_(std::move(value)) {}
  explicit Verdict(RejectReason reason) : state_(reason) {}

  std::variant<T, RejectReason> state_;
};

/// C = (ID, C2, T_U).
struct LoginRequest {
  Identity id;
  Block c2;
  Timestamp t_u;

  friend bool operator==(const LoginRequest&, const LoginRequest&) = default;
};

/// (C3, T_S).
struct ServerResponse {
  Block c3;
  Timestamp t_s;

  friend bool operator==(const ServerResponse&, const ServerResponse&) = default;
};

/// What the user side keeps between sending the login request and checking the reply.
struct SessionContext {
  Block c1;
  Timestamp t_u;
};

struct Registration {
  RegistrationCount n = 0;
  Block v;
  Block r;
};

/// Card contents (V, R, b). The card itself never learns the password.
class SmartCard {
 public:
  SmartCard(Identity id, Block v, Block r, Block b)
      : id_(std::move(id)), v_(v), r_(r), b_(b) {}

  const Identity& id() const { return id_; }
  const Block& v() const { return v_; }
  const Block& r() const { return r_; }
  const Block& b() const { return b_; }

  /// f(b XOR PW) as the card computes it when a password is keyed in.
  Block password_digest(const Password& pw) const;

  friend bool operator==(const SmartCard&, const SmartCard&) = default;

 private:
  friend Verdict<SmartCard> change_password_with_v_star(const SmartCard&, const Block&,
                                                        const Password&);
  Identity id_;
  Block v_;
  Block r_;
  Block b_;
};

/// Authentication server: master secret x and the per-identity registration counter.
class AuthServer {
 public:
  explicit AuthServer(Block master_secret) : x_(master_secret) {}

  /// Creates the account with n = 0, or bumps n on re-registration. Returns V and R.
  Registration register_user(const Identity& id, const Block& pw_s);

  Verdict<ServerResponse> verify_login(const LoginRequest& req, Timestamp now,
                                       FreshnessWindow window = kDefaultWindow) const;

  std::optional<RegistrationCount> registration_count(const Identity& id) const;
  const std::map<Identity, RegistrationCount>& accounts() const { return accounts_; }

 private:
  Block card_secret(const Identity& id, RegistrationCount n) const;

  Block x_;
  std::map<Identity, RegistrationCount> accounts_;
};

/// True iff 0 <= receiver - sender <= window.
bool is_fresh(Timestamp sender, Timestamp receiver, FreshnessWindow window);

/// PW_S = f(b XOR PW), submitted to the server over the registration channel.
Block user_prepare_registration(const Password& pw, const Block& b);

SmartCard issue_card(const Identity& id, const Registration& reg, const Block& b);

/// Builds C with C1 = R XOR f(b XOR PW) and C2 = f(C1 XOR T_U). Wrong passwords are not detected here.
std::pair<LoginRequest, SessionContext> login(const SmartCard& card, const Password& pw,
                                              Timestamp t_u);

/// The user's mutual-authentication check C3 == f(C1 XOR T_S).
Verdict<Accepted> user_verify_response(const SessionContext& ctx, const ServerResponse& resp,
                                       FreshnessWindow window = kDefaultWindow);

/// Password change as run on the card: V* = R XOR f(b XOR PW_old), accept iff V* == V.
Verdict<SmartCard> change_password(const SmartCard& card, const Password& pw_old,
                                   const Password& pw_new);

// The card reader also accepts the old-password entry in pre-hashed form. These entry
// points are what an insider with registration-time values can drive.

/// Old entry given as a raw f(b XOR PW) value instead of a keyed password.
Verdict<SmartCard> change_password_with_digest(const SmartCard& card, const Block& old_digest,
                                               const Password& pw_new);
/// Old entry given directly as V*.
Verdict<SmartCard> change_password_with_v_star(const SmartCard& card, const Block& v_star,
                                               const Password& pw_new);

}  // namespace scauth
