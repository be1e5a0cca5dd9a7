#include <catch_amalgamated.hpp>

#include "scauth/crypto.hpp"
#include "test_support.hpp"

using namespace scauth;

// Digests below were produced by tests/oracle/compute_vectors.py (hashlib), not by this library.
namespace golden {
constexpr const char* kZero = "66687aadf862bd776c8fc18b8e9f8e20089714856ee233b3902a591d0d5f2925";
constexpr const char* kOnes = "af9613760f72635fbdb44a5a0a63c39f12af30f950a6ee5c971be188e89c4051";
constexpr const char* kIdAlice = "395fced32ca1987666678d466cdf9b8a59daf590930631eab7b6fda7c8d0be0a";
constexpr const char* kPwPw1 = "7681ec1af91e05861b7261f4cf8de5d77e4d020705553c8474535af88669a812";
constexpr const char* kIdPw1 = "7b87fea706421d12c48ed0da1ba894c285ef1be8cee5464679b14723b238f6ee";
constexpr const char* kTime10 = "e6383e0ab8bca0a096ad4c87749e127853d564dca71393a995243fe225649982";
constexpr const char* kEidAlice0 = "07460c5137b650b68c2a6f99f5d8227d86c33e8d55fd92e037c6360003203e3d";
constexpr const char* kEidAlice1 = "a3e37a357983bdb28d18177e270e4f08fc2433c83a95a7352e7287743b80513c";
}  // namespace golden

TEST_CASE("one_way matches pinned SHA-256 vectors", "[crypto]") {
  CHECK(one_way(Block::zero()).to_hex() == golden::kZero);
  CHECK(one_way(Block::filled(0xff)).to_hex() == golden::kOnes);
  CHECK(one_way(Block::zero()) != one_way(Block::filled(0xff)));
}

TEST_CASE("one_way is deterministic", "[crypto]") {
  testing::Gen gen(1);
  for (int i = 0; i < 100; ++i) {
    const Block b = gen.block();
    CHECK(one_way(b) == one_way(b));
  }
}

TEST_CASE("xor algebra holds on random triples", "[crypto][property]") {
  testing::Gen gen(7);
  for (int i = 0; i < 1000; ++i) {
    const Block a = gen.block();
    const Block b = gen.block();
    const Block c = gen.block();
    REQUIRE((a ^ b) == (b ^ a));
    REQUIRE(((a ^ b) ^ c) == (a ^ (b ^ c)));
    REQUIRE((a ^ a) == Block::zero());
    REQUIRE((a ^ Block::zero()) == a);
    REQUIRE(((a ^ b) ^ b) == a);
  }
}

TEST_CASE("encode matches pinned vectors", "[crypto]") {
  CHECK(encode(Identity{"alice"}).to_hex() == golden::kIdAlice);
  CHECK(encode(Password{"pw1"}).to_hex() == golden::kPwPw1);
  CHECK(encode(Identity{"pw1"}).to_hex() == golden::kIdPw1);
  CHECK(encode(Timestamp{10}).to_hex() == golden::kTime10);
  CHECK(encode(Identity{"alice"}, 0).to_hex() == golden::kEidAlice0);
  CHECK(encode(Identity{"alice"}, 1).to_hex() == golden::kEidAlice1);
}

TEST_CASE("encode separates types and counters", "[crypto]") {
  CHECK(encode(Identity{"alice"}, 0) == encode(Identity{"alice"}, 0));
  CHECK(encode(Identity{"alice"}, 0) != encode(Identity{"alice"}, 1));
  CHECK(encode(Password{"pw1"}) != encode(Identity{"pw1"}));
  CHECK(encode(Timestamp{0}) != encode(Timestamp{1}));
}

TEST_CASE("hex round trip and rejection", "[crypto]") {
  testing::Gen gen(3);
  for (int i = 0; i < 50; ++i) {
    const Block b = gen.block();
    REQUIRE(Block::from_hex(b.to_hex()) == b);
  }
  CHECK(Block::from_hex(std::string(64, 'A')) == Block::filled(0xaa));
  CHECK_THROWS_AS(Block::from_hex(std::string(63, '0')), std::invalid_argument);
  CHECK_THROWS_AS(Block::from_hex(std::string(66, '0')), std::invalid_argument);
  CHECK_THROWS_AS(Block::from_hex(std::string(63, '0') + "g"), std::invalid_argument);
  const std::vector<std::uint8_t> short_bytes(31, 0);
  CHECK_THROWS_AS(Block::from_bytes(short_bytes), std::invalid_argument);
}

TEST_CASE("identity and password canonical forms", "[crypto]") {
  CHECK_THROWS_AS(Identity{""}, std::invalid_argument);
  CHECK_THROWS_AS(Identity{std::string(65, 'a')}, std::invalid_argument);
  CHECK_THROWS_AS(Identity{"tab\there"}, std::invalid_argument);
  CHECK_THROWS_AS(Identity{"caf\xc3\xa9"}, std::invalid_argument);
  CHECK_NOTHROW(Identity{std::string(64, 'a')});

  CHECK_THROWS_AS(Password{""}, std::invalid_argument);
  CHECK_THROWS_AS(Password{std::string(65, 'x')}, std::invalid_argument);
  CHECK_NOTHROW(Password{std::string(64, 'x')});
  // 64 two-byte code points: 128 bytes, still 64 characters.
  std::string accented;
  for (int i = 0; i < 64; ++i) accented += "\xc3\xa9";
  CHECK_NOTHROW(Password{accented});
}
