#include "scauth/crypto.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace scauth {

namespace {

enum class EncodingTag : std::uint8_t {
  identity = 0x01,
  password = 0x02,
  timestamp = 0x03,
  extended_identity = 0x04,
};

Block sha256(std::span<const std::uint8_t> data) {
  Block::Bytes digest{};
  static_assert(SHA256_DIGEST_LENGTH == kBlockLen);
  SHA256(data.data(), data.size(), digest.data());
  return Block{digest};
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void append_big_endian(std::vector<std::uint8_t>& out, std::uint64_t value, int width) {
  for (int shift = (width - 1) * 8; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(value >> shift));
  }
}

std::vector<std::uint8_t> tagged(EncodingTag tag, std::string_view text) {
  std::vector<std::uint8_t> out;
  out.reserve(1 + text.size() + 8);
  out.push_back(static_cast<std::uint8_t>(tag));
  out.insert(out.end(), text.begin(), text.end());
  return out;
}

}  // namespace

Block Block::filled(std::uint8_t value) {
  Bytes bytes;
  bytes.fill(value);
  return Block{bytes};
}

Block Block::from_hex(std::string_view hex) {
  if (hex.size() != 2 * kBlockLen) {
    throw std::invalid_argument("block hex must be 64 characters, got " +
                                std::to_string(hex.size()));
  }
  Bytes bytes{};
  for (std::size_t i = 0; i < kBlockLen; ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit in block");
    bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return Block{bytes};
}

Block Block::from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kBlockLen) {
    throw std::invalid_argument("block must be 32 bytes, got " + std::to_string(bytes.size()));
  }
  Bytes out{};
  std::copy(bytes.begin(), bytes.end(), out.begin());
  return Block{out};
}

std::string Block::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * kBlockLen);
  for (const auto byte : bytes_) {
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 0x0f]);
  }
  return out;
}

Block& Block::operator^=(const Block& other) {
  for (std::size_t i = 0; i < kBlockLen; ++i) bytes_[i] ^= other.bytes_[i];
  return *this;
}

Block one_way(const Block& input) { return sha256(input.bytes()); }

bool Identity::is_canonical(std::string_view id) {
  if (id.empty() || id.size() > kMaxLen) return false;
  return std::all_of(id.begin(), id.end(), [](char c) { return c >= 0x20 && c <= 0x7e; });
}

Identity::Identity(std::string id) : id_(std::move(id)) {
  if (!is_canonical(id_)) {
    throw std::invalid_argument("identity must be 1-64 printable ASCII characters");
  }
}

bool Password::is_canonical(std::string_view pw) {
  if (pw.empty()) return false;
  // Count code points by skipping UTF-8 continuation bytes.
  const auto code_points = std::count_if(pw.begin(), pw.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xc0) != 0x80;
  });
  return static_cast<std::size_t>(code_points) <= kMaxLen;
}

Password::Password(std::string pw) : pw_(std::move(pw)) {
  if (!is_canonical(pw_)) throw std::invalid_argument("password must be 1-64 characters");
}

Block encode(const Identity& id) { return sha256(tagged(EncodingTag::identity, id.str())); }

Block encode(const Password& pw) { return sha256(tagged(EncodingTag::password, pw.str())); }

Block encode(Timestamp t) {
  auto bytes = tagged(EncodingTag::timestamp, {});
  append_big_endian(bytes, t.ticks, 8);
  return sha256(bytes);
}

Block encode(const Identity& id, RegistrationCount n) {
  auto bytes = tagged(EncodingTag::extended_identity, id.str());
  append_big_endian(bytes, n, 4);
  return sha256(bytes);
}

}  // namespace scauth
