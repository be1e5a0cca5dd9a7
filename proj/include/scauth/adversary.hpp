#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "scauth/channel.hpp"
#include "scauth/scheme.hpp"

namespace scauth {

/// Card contents read out by an attacker holding the card.
struct BreachedCardSecrets {
  Block v;
  Block r;
  Block b;

  static BreachedCardSecrets extract(const SmartCard& card) {
    return BreachedCardSecrets{card.v(), card.r(), card.b()};
  }
};

/// What an insider at the server saw during registration.
struct InsiderKnowledge {
  Block pw_s;
  Block v;
  Block r;
};

class DictionaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered, duplicate-free, non-empty list of password candidates.
class Dictionary {
 public:
  /// Throws DictionaryError when empty or when a candidate repeats.
  explicit Dictionary(std::vector<Password> candidates);

  /// One password per line, UTF-8, no blank lines. A trailing newline and CR line endings are accepted.
  static Dictionary parse(std::istream& in);
  static Dictionary load(const std::filesystem::path& path);

  const std::vector<Password>& candidates() const { return candidates_; }
  std::size_t size() const { return candidates_.size(); }

 private:
  std::vector<Password> candidates_;
};

struct GuessResult {
  Password password;
  Block c1;
  std::size_t probes = 0;
};

/// Tries candidates in dictionary order against an intercepted C2; first match wins.
std::optional<GuessResult> offline_guess(const BreachedCardSecrets& secrets,
                                         const LoginRequest& intercepted, const Dictionary& dict);

/// Drives the card's password change with a recovered password. Rejected if the password is wrong.
Verdict<SmartCard> outsider_change_password(const SmartCard& card, const Password& recovered_pw,
                                            const Password& pw_new);

/// How the insider feeds the old-password entry to the card reader.
enum class InsiderEntry {
  supply_v,     // V* keyed in directly
  supply_pw_s,  // PW_S keyed in place of f(b XOR PW), skipping the hash step
};

std::string_view to_string(InsiderEntry entry);
std::optional<InsiderEntry> parse_insider_entry(std::string_view text);

/// Rewrites the card's password using registration-time values only.
/// Rejected when the user has changed the password since registration (PW_S is stale).
Verdict<SmartCard> insider_change_password(const SmartCard& card, const InsiderKnowledge& knowledge,
                                           const Password& pw_new,
                                           InsiderEntry entry = InsiderEntry::supply_v);

/// C_f = (ID, C3, T_S). Uses nothing but the two intercepted wire messages.
LoginRequest parallel_session_forge(const LoginRequest& req, const ServerResponse& resp);

/// Intruder records an in-flight server response and removes it from the channel.
ServerResponse intercept_and_drop(Channel& channel, MessageId id);

}  // namespace scauth
