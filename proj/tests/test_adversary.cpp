#include <catch_amalgamated.hpp>

#include <sstream>

#include "scauth/adversary.hpp"
#include "scauth/channel.hpp"
#include "test_support.hpp"

using namespace scauth;
using testing::Gen;

TEST_CASE("dictionary parsing", "[adversary]") {
  std::istringstream ok("alpha\r\nbeta\ngamma\n");
  const auto dict = Dictionary::parse(ok);
  REQUIRE(dict.size() == 3);
  CHECK(dict.candidates()[1].str() == "beta");

  std::istringstream blank("alpha\n\nbeta\n");
  CHECK_THROWS_AS(Dictionary::parse(blank), DictionaryError);
  std::istringstream dup("alpha\nbeta\nalpha\n");
  CHECK_THROWS_AS(Dictionary::parse(dup), DictionaryError);
  std::istringstream empty("");
  CHECK_THROWS_AS(Dictionary::parse(empty), DictionaryError);
  CHECK_THROWS_AS(Dictionary::load("/nonexistent/words.txt"), DictionaryError);
}

TEST_CASE("offline_guess", "[adversary]") {
  Gen gen(11);
  auto e = testing::enrol(gen);
  const auto [req, ctx] = login(e.card, e.pw, Timestamp{10});
  const auto secrets = BreachedCardSecrets::extract(e.card);

  SECTION("finds the password in a large dictionary") {
    const auto guess = offline_guess(secrets, req, gen.dictionary_with(e.pw, 1000));
    REQUIRE(guess.has_value());
    CHECK(guess->password == e.pw);
    CHECK(guess->c1 == e.card.v());
  }
  SECTION("not found without the password") {
    CHECK_FALSE(offline_guess(secrets, req, gen.dictionary_without(e.pw, 1000)).has_value());
  }
  SECTION("single-entry dictionary hits on the first probe") {
    const auto guess = offline_guess(secrets, req, Dictionary{{e.pw}});
    REQUIRE(guess.has_value());
    CHECK(guess->probes == 1);
  }
  SECTION("dictionary order decides the probe count") {
    auto words = gen.distinct_passwords(9, e.pw);
    words.push_back(e.pw);
    const auto guess = offline_guess(secrets, req, Dictionary{words});
    REQUIRE(guess.has_value());
    CHECK(guess->probes == 10);
  }
}

TEST_CASE("offline_guess recovers in-dictionary passwords", "[adversary][property]") {
  Gen gen(12);
  for (int i = 0; i < 50; ++i) {
    auto e = testing::enrol(gen);
    const auto [req, ctx] = login(e.card, e.pw, Timestamp{gen.below(1000)});
    const auto guess = offline_guess(BreachedCardSecrets::extract(e.card), req,
                                     gen.dictionary_with(e.pw, 100));
    REQUIRE(guess.has_value());
    REQUIRE(guess->password == e.pw);
  }
}

TEST_CASE("outsider_change_password", "[adversary]") {
  Gen gen(13);
  auto e = testing::enrol(gen);
  const Password evil{"evil"};

  SECTION("recovered password lets the attacker take over") {
    const auto changed = outsider_change_password(e.card, e.pw, evil);
    REQUIRE(changed.accepted());
    CHECK(changed.value().r() == (e.card.r() ^ e.card.password_digest(e.pw) ^
                                  e.card.password_digest(evil)));
    const auto [evil_req, evil_ctx] = login(changed.value(), evil, Timestamp{20});
    CHECK(e.server.verify_login(evil_req, Timestamp{21}).accepted());
    const auto [victim_req, victim_ctx] = login(changed.value(), e.pw, Timestamp{30});
    CHECK(e.server.verify_login(victim_req, Timestamp{31}).reason() ==
          RejectReason::bad_authenticator);
  }
  SECTION("wrong recovered password fails the precondition") {
    const auto changed = outsider_change_password(e.card, Password{"wrong"}, evil);
    REQUIRE_FALSE(changed.accepted());
    CHECK(changed.reason() == RejectReason::wrong_old_password);
  }
  SECTION("choosing the same password changes nothing") {
    const auto changed = outsider_change_password(e.card, e.pw, e.pw);
    REQUIRE(changed.accepted());
    CHECK(changed.value() == e.card);
  }
}

TEST_CASE("insider_change_password", "[adversary]") {
  Gen gen(14);
  auto e = testing::enrol(gen);
  const InsiderKnowledge knowledge{e.pw_s, e.reg.v, e.reg.r};
  const Password evil{"evil"};

  CHECK((e.card.r() ^ knowledge.pw_s) == knowledge.v);

  for (const auto entry : {InsiderEntry::supply_v, InsiderEntry::supply_pw_s}) {
    DYNAMIC_SECTION("fresh card, mode " << to_string(entry)) {
      const auto changed = insider_change_password(e.card, knowledge, evil, entry);
      REQUIRE(changed.accepted());
      const auto [victim_req, victim_ctx] = login(changed.value(), e.pw, Timestamp{10});
      CHECK(e.server.verify_login(victim_req, Timestamp{11}).reason() ==
            RejectReason::bad_authenticator);
      const auto [evil_req, evil_ctx] = login(changed.value(), evil, Timestamp{10});
      CHECK(e.server.verify_login(evil_req, Timestamp{11}).accepted());
    }
    DYNAMIC_SECTION("user changed password first, mode " << to_string(entry)) {
      const auto moved = change_password(e.card, e.pw, Password{"users-new-pw"});
      REQUIRE(moved.accepted());
      const auto changed = insider_change_password(moved.value(), knowledge, evil, entry);
      REQUIRE_FALSE(changed.accepted());
      CHECK(changed.reason() == RejectReason::wrong_old_password);
    }
  }
  CHECK(parse_insider_entry("supply-pw-s") == InsiderEntry::supply_pw_s);
  CHECK_FALSE(parse_insider_entry("brute").has_value());
}

TEST_CASE("parallel_session_forge", "[adversary]") {
  Gen gen(15);
  auto e = testing::enrol(gen);
  const FreshnessWindow window{5};
  const auto [req, ctx] = login(e.card, e.pw, Timestamp{10});
  const auto resp = e.server.verify_login(req, Timestamp{11}, window).value();
  const auto forged = parallel_session_forge(req, resp);

  CHECK(forged.id == req.id);
  CHECK(forged.c2 == resp.c3);
  CHECK(forged.t_u == resp.t_s);

  SECTION("accepted within the window, with C4 = f(V xor T_S*)") {
    const auto verdict = e.server.verify_login(forged, Timestamp{12}, window);
    REQUIRE(verdict.accepted());
    CHECK(verdict.value().c3 == one_way(e.card.v() ^ encode(Timestamp{12})));
    CHECK(verdict.value().t_s == Timestamp{12});
  }
  SECTION("stale after the window") {
    const auto verdict = e.server.verify_login(forged, Timestamp{11 + window.ticks + 1}, window);
    REQUIRE_FALSE(verdict.accepted());
    CHECK(verdict.reason() == RejectReason::stale_timestamp);
  }
  SECTION("substituted identity fails") {
    AuthServer server = e.server;
    const Identity bob{e.id.str() + "-bob"};
    server.register_user(bob, gen.block());
    LoginRequest swapped = forged;
    swapped.id = bob;
    const auto verdict = server.verify_login(swapped, Timestamp{12}, window);
    REQUIRE_FALSE(verdict.accepted());
    CHECK(verdict.reason() == RejectReason::bad_authenticator);
  }
}

TEST_CASE("C3 has the same form as the login check target", "[adversary][property]") {
  Gen gen(16);
  for (int i = 0; i < 100; ++i) {
    auto e = testing::enrol(gen);
    const Timestamp t_u{gen.below(1000)};
    const Timestamp t_s{t_u.ticks + 1};
    const auto [req, ctx] = login(e.card, e.pw, t_u);
    const auto resp = e.server.verify_login(req, t_s).value();
    const Block secret = one_way(encode(e.id, 0) ^ e.x);
    REQUIRE(req.c2 == one_way(secret ^ encode(t_u)));
    REQUIRE(resp.c3 == one_way(secret ^ encode(t_s)));
  }
}

TEST_CASE("intercept_and_drop", "[adversary]") {
  Clock clock;
  Transcript log;
  Channel channel(clock, log);
  const AddressedResponse first{Identity{"alice"}, ServerResponse{Block::filled(1), Timestamp{0}}};
  const AddressedResponse second{Identity{"alice"}, ServerResponse{Block::filled(2), Timestamp{0}}};

  const auto a = channel.send(Actor::server, first);
  const auto honest = channel.send(Actor::server, second);
  CHECK(intercept_and_drop(channel, a) == first.response);
  CHECK_FALSE(channel.in_flight(a));
  CHECK(channel.in_flight(honest));
  CHECK(std::get<AddressedResponse>(channel.deliver(honest, Actor::user)) == second);

  const auto b = channel.send(Actor::server, first);
  intercept_and_drop(channel, b);
  std::vector<MessageId> dropped;
  for (const auto& ev : log.events()) {
    if (ev.kind == EventKind::drop) dropped.push_back(ev.payload["msg"].get<MessageId>());
  }
  CHECK(dropped == std::vector<MessageId>{a, b});

  const auto login_msg =
      channel.send(Actor::user, LoginRequest{Identity{"alice"}, Block{}, Timestamp{0}});
  CHECK_THROWS_AS(intercept_and_drop(channel, login_msg), ChannelError);
}
