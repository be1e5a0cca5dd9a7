#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace scauth {

inline constexpr std::size_t kBlockLen = 32;

/// Fixed-width value domain for every hashed or XORed quantity in the scheme.
class Block {
 public:
  using Bytes = std::array<std::uint8_t, kBlockLen>;

  constexpr Block() = default;
  constexpr explicit Block(const Bytes& bytes) : bytes_(bytes) {}

  static constexpr Block zero() { return Block{}; }
  static Block filled(std::uint8_t value);

  /// Parses exactly 64 hex digits (either case). Throws std::invalid_argument otherwise.
  static Block from_hex(std::string_view hex);
  /// Copies exactly kBlockLen bytes. Throws std::invalid_argument on any other length.
  static Block from_bytes(std::span<const std::uint8_t> bytes);

  std::string to_hex() const;
  std::span<const std::uint8_t, kBlockLen> bytes() const { return bytes_; }

  Block& operator^=(const Block& other);
  friend Block operator^(Block lhs, const Block& rhs) { return lhs ^= rhs; }

  friend bool operator==(const Block&, const Block&) = default;

 private:
  Bytes bytes_{};
};

/// The scheme's one-way function: SHA-256 over the raw block bytes.
Block one_way(const Block& input);

/// User identity: 1..64 printable ASCII characters.
class Identity {
 public:
  static constexpr std::size_t kMaxLen = 64;

  explicit Identity(std::string id);
  static bool is_canonical(std::string_view id);

  const std::string& str() const { return id_; }
  friend auto operator<=>(const Identity&, const Identity&) = default;

 private:
  std::string id_;
};

/// Password: non-empty, at most 64 characters (UTF-8 code points).
class Password {
 public:
  static constexpr std::size_t kMaxLen = 64;

  explicit Password(std::string pw);
  static bool is_canonical(std::string_view pw);

  const std::string& str() const { return pw_; }
  friend auto operator<=>(const Password&, const Password&) = default;

 private:
  std::string pw_;
};

/// Logical simulation tick.
struct Timestamp {
  std::uint64_t ticks = 0;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

/// Registration counter n.
using RegistrationCount = std::uint32_t;

// Canonical encodings into the block domain: one_way(tag || canonical bytes).
// The tag byte keeps values of different types from sharing a preimage.
Block encode(const Identity& id);
Block encode(const Password& pw);
Block encode(Timestamp t);
/// Extended identity EID = (ID || n).
Block encode(const Identity& id, RegistrationCount n);

}  // namespace scauth
