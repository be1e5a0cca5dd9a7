#include "scauth/scheme.hpp"

namespace scauth {

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::unknown_identity:
      return "unknown-identity";
    case RejectReason::stale_timestamp:
      return "stale-timestamp";
    case RejectReason::bad_authenticator:
      return "bad-authenticator";
    case RejectReason::wrong_old_password:
      return "wrong-old-password";
  }
  return "unknown";
}

bool is_fresh(Timestamp sender, Timestamp receiver, FreshnessWindow window) {
  return receiver.ticks >= sender.ticks && receiver.ticks - sender.ticks <= window.ticks;
}

Block SmartCard::password_digest(const Password& pw) const { return one_way(b_ ^ encode(pw)); }

Block user_prepare_registration(const Password& pw, const Block& b) {
  return one_way(b ^ encode(pw));
}

Block AuthServer::card_secret(const Identity& id, RegistrationCount n) const {
  return one_way(encode(id, n) ^ x_);
}

Registration AuthServer::register_user(const Identity& id, const Block& pw_s) {
  auto [it, inserted] = accounts_.try_emplace(id, 0);
  if (!inserted) ++it->second;
  const Block v = card_secret(id, it->second);
  return Registration{it->second, v, v ^ pw_s};
}

std::optional<RegistrationCount> AuthServer::registration_count(const Identity& id) const {
  const auto it = accounts_.find(id);
  if (it == accounts_.end()) return std::nullopt;
  return it->second;
}

Verdict<ServerResponse> AuthServer::verify_login(const LoginRequest& req, Timestamp now,
                                                 FreshnessWindow window) const {
  const auto n = registration_count(req.id);
  if (!n) return Verdict<ServerResponse>::reject(RejectReason::unknown_identity);
  if (!is_fresh(req.t_u, now, window)) {
    return Verdict<ServerResponse>::reject(RejectReason::stale_timestamp);
  }
  const Block secret = card_secret(req.id, *n);
  if (req.c2 != one_way(secret ^ encode(req.t_u))) {
    return Verdict<ServerResponse>::reject(RejectReason::bad_authenticator);
  }
  return Verdict<ServerResponse>::accept(ServerResponse{one_way(secret ^ encode(now)), now});
}

SmartCard issue_card(const Identity& id, const Registration& reg, const Block& b) {
  return SmartCard{id, reg.v, reg.r, b};
}

std::pair<LoginRequest, SessionContext> login(const SmartCard& card, const Password& pw,
                                              Timestamp t_u) {
  const Block c1 = card.r() ^ card.password_digest(pw);
  const Block c2 = one_way(c1 ^ encode(t_u));
  return {LoginRequest{card.id(), c2, t_u}, SessionContext{c1, t_u}};
}

Verdict<Accepted> user_verify_response(const SessionContext& ctx, const ServerResponse& resp,
                                       FreshnessWindow window) {
  if (!is_fresh(ctx.t_u, resp.t_s, window)) {
    return Verdict<Accepted>::reject(RejectReason::stale_timestamp);
  }
  if (resp.c3 != one_way(ctx.c1 ^ encode(resp.t_s))) {
    return Verdict<Accepted>::reject(RejectReason::bad_authenticator);
  }
  return Verdict<Accepted>::accept({});
}

Verdict<SmartCard> change_password_with_v_star(const SmartCard& card, const Block& v_star,
                                               const Password& pw_new) {
  if (v_star != card.v_) return Verdict<SmartCard>::reject(RejectReason::wrong_old_password);
  SmartCard updated = card;
  updated.r_ = v_star ^ card.password_digest(pw_new);
  return Verdict<SmartCard>::accept(std::move(updated));
}

Verdict<SmartCard> change_password_with_digest(const SmartCard& card, const Block& old_digest,
                                               const Password& pw_new) {
  return change_password_with_v_star(card, card.r() ^ old_digest, pw_new);
}

Verdict<SmartCard> change_password(const SmartCard& card, const Password& pw_old,
                                   const Password& pw_new) {
  return change_password_with_digest(card, card.password_digest(pw_old), pw_new);
}

}  // namespace scauth
