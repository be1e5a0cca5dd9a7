#include "scauth/adversary.hpp"

#include <fstream>
#include <set>
#include <string>

namespace scauth {

Dictionary::Dictionary(std::vector<Password> candidates) : candidates_(std::move(candidates)) {
  if (candidates_.empty()) throw DictionaryError("dictionary is empty");
  std::set<std::string_view> seen;
  for (const auto& pw : candidates_) {
    if (!seen.insert(pw.str()).second) {
      throw DictionaryError("duplicate dictionary entry '" + pw.str() + "'");
    }
  }
}

Dictionary Dictionary::parse(std::istream& in) {
  std::vector<Password> candidates;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!Password::is_canonical(line)) {
      throw DictionaryError("line " + std::to_string(line_no) +
                            ": blank or over-long password entry");
    }
    candidates.emplace_back(std::move(line));
  }
  return Dictionary{std::move(candidates)};
}

Dictionary Dictionary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DictionaryError("cannot open dictionary '" + path.string() + "'");
  return parse(in);
}

std::optional<GuessResult> offline_guess(const BreachedCardSecrets& secrets,
                                         const LoginRequest& intercepted, const Dictionary& dict) {
  const Block t_u = encode(intercepted.t_u);
  std::size_t probes = 0;
  for (const auto& candidate : dict.candidates()) {
    ++probes;
    const Block c1 = secrets.r ^ one_way(secrets.b ^ encode(candidate));
    if (one_way(c1 ^ t_u) == intercepted.c2) return GuessResult{candidate, c1, probes};
  }
  return std::nullopt;
}

Verdict<SmartCard> outsider_change_password(const SmartCard& card, const Password& recovered_pw,
                                            const Password& pw_new) {
  return change_password(card, recovered_pw, pw_new);
}

std::string_view to_string(InsiderEntry entry) {
  return entry == InsiderEntry::supply_v ? "supply-v" : "supply-pw-s";
}

std::optional<InsiderEntry> parse_insider_entry(std::string_view text) {
  if (text == "supply-v") return InsiderEntry::supply_v;
  if (text == "supply-pw-s") return InsiderEntry::supply_pw_s;
  return std::nullopt;
}

Verdict<SmartCard> insider_change_password(const SmartCard& card, const InsiderKnowledge& knowledge,
                                           const Password& pw_new, InsiderEntry entry) {
  switch (entry) {
    case InsiderEntry::supply_v:
      // The insider keys in R XOR PW_S, which equals V only while R is unchanged.
      return change_password_with_v_star(card, card.r() ^ knowledge.pw_s, pw_new);
    case InsiderEntry::supply_pw_s:
      return change_password_with_digest(card, knowledge.pw_s, pw_new);
  }
  throw std::logic_error("unhandled insider entry mode");
}

LoginRequest parallel_session_forge(const LoginRequest& req, const ServerResponse& resp) {
  return LoginRequest{req.id, resp.c3, resp.t_s};
}

ServerResponse intercept_and_drop(Channel& channel, MessageId id) {
  const auto* resp = std::get_if<AddressedResponse>(&channel.intercept(id));
  if (resp == nullptr) throw ChannelError("intercept_and_drop expects a server response");
  const ServerResponse recorded = resp->response;
  channel.drop(id, Actor::intruder);
  return recorded;
}

}  // namespace scauth
