#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <string>
#include <vector>

#include "cardproto/scheme_timestamp.hpp"
#include "support/test_util.hpp"

using namespace cardproto;
using testsupport::random_word;

namespace {

constexpr std::uint64_t kWindow = 60;

struct Fixture {
  ServerState server;
  SmartCard card;

  static Fixture zero_master() {
    ServerState server;
    server.master_secret = MasterSecret{};
    server.identity = "acme";
    server.freshness_window = kWindow;
    auto card = register_user(server, UserId{"alice"}, Password{"pw1"});
    REQUIRE(card.ok());
    return Fixture{std::move(server), std::move(card).value()};
  }
};

}  // namespace

TEST_CASE("login request matches the golden authenticator") {
  Fixture fx = Fixture::zero_master();
  auto login = build_login_t(fx.card, Password{"pw1"}, fx.server.identity,
                             Timestamp{100});
  REQUIRE(login.ok());
  CHECK(login.value().request.user_id == UserId{"alice"});
  CHECK(login.value().request.t == Timestamp{100});
  // h1(S, id, r_i, t) for S="acme", zero master secret, t=100; digest
  // computed with an external SHA-256.
  CHECK(login.value().request.c1.hex() ==
        "eba0f1ad19da8fa696aef27a786b09444bded16feb9e7bafafe5162d93e71472");

  auto later = build_login_t(fx.card, Password{"pw1"}, fx.server.identity,
                             Timestamp{101});
  REQUIRE(later.ok());
  CHECK(later.value().request.c1.hex() ==
        "c858eb6d83489679c4a70d295e5ed745395ea6c2a6b9bf18860073475319b388");
  CHECK(later.value().request.c1 != login.value().request.c1);
}

TEST_CASE("wrong password terminates the login before anything is emitted") {
  Fixture fx = Fixture::zero_master();
  auto login = build_login_t(fx.card, Password{"wrong"}, fx.server.identity,
                             Timestamp{100});
  CHECK(!login.ok());
  CHECK(login.reason() == RejectReason::password);
}

TEST_CASE("honest run: golden reply, golden key, both sides agree") {
  Fixture fx = Fixture::zero_master();
  auto login = build_login_t(fx.card, Password{"pw1"}, fx.server.identity,
                             Timestamp{100});
  REQUIRE(login.ok());

  auto accepted =
      server_verify_login_t(fx.server, login.value().request, Timestamp{101});
  REQUIRE(accepted.ok());
  CHECK(accepted.value().reply.t_prime == Timestamp{101});
  CHECK(accepted.value().reply.c2.hex() ==
        "3583e24079cefccad064b73dee62c1e823951f357fbd7ade53fb95f3598f6161");

  auto key_user = user_verify_reply_t(login.value().session,
                                      accepted.value().reply, Timestamp{101},
                                      kWindow);
  REQUIRE(key_user.ok());
  CHECK(key_user.value().key.hex() ==
        "857ac1742df973dd5e9c93ce41c371b02372ed61af48d01520b5b3e38ab85018");
  CHECK(key_user.value().peer_confirmed);

  const SessionKeyT key_server = server_session_key_t(accepted.value().session);
  CHECK(key_server.key == key_user.value().key);
  CHECK(!key_server.peer_confirmed);

  // The key shares no domain with the authenticators.
  CHECK(key_user.value().key != login.value().request.c1);
  CHECK(key_user.value().key != accepted.value().reply.c2);
}

TEST_CASE("server rejections: identity, freshness, replay, authenticity") {
  Fixture fx = Fixture::zero_master();
  auto login = build_login_t(fx.card, Password{"pw1"}, fx.server.identity,
                             Timestamp{100});
  REQUIRE(login.ok());
  const LoginRequestT& request = login.value().request;

  SUBCASE("unknown id") {
    LoginRequestT forged = request;
    forged.user_id = UserId{"mallory"};
    auto res = server_verify_login_t(fx.server, forged, Timestamp{100});
    CHECK(!res.ok());
    CHECK(res.reason() == RejectReason::identity);
  }

  SUBCASE("future-dated request") {
    auto res = server_verify_login_t(fx.server, request, Timestamp{99});
    CHECK(!res.ok());
    CHECK(res.reason() == RejectReason::freshness);
  }

  SUBCASE("stale request just past the window") {
    auto res =
        server_verify_login_t(fx.server, request, Timestamp{100 + kWindow + 1});
    CHECK(!res.ok());
    CHECK(res.reason() == RejectReason::freshness);
  }

  SUBCASE("window boundary still accepts") {
    auto res =
        server_verify_login_t(fx.server, request, Timestamp{100 + kWindow});
    CHECK(res.ok());
  }

  SUBCASE("exact replay is refused after acceptance") {
    REQUIRE(server_verify_login_t(fx.server, request, Timestamp{100}).ok());
    auto replay = server_verify_login_t(fx.server, request, Timestamp{101});
    CHECK(!replay.ok());
    CHECK(replay.reason() == RejectReason::freshness);
  }

  SUBCASE("flipped authenticator bit") {
    LoginRequestT forged = request;
    forged.c1.bytes[0] ^= 0x01;
    auto res = server_verify_login_t(fx.server, forged, Timestamp{100});
    CHECK(!res.ok());
    CHECK(res.reason() == RejectReason::authenticity);
  }

  SUBCASE("rejected requests are not remembered as seen") {
    LoginRequestT forged = request;
    forged.c1.bytes[0] ^= 0x01;
    REQUIRE(!server_verify_login_t(fx.server, forged, Timestamp{100}).ok());
    // The honest original must still be accepted afterwards.
    CHECK(server_verify_login_t(fx.server, request, Timestamp{100}).ok());
  }
}

TEST_CASE("user-side rejections: stale reply, cross-user reply") {
  Fixture fx = Fixture::zero_master();
  auto bob = register_user(fx.server, UserId{"bob"}, Password{"pw-bob"});
  REQUIRE(bob.ok());

  auto login = build_login_t(fx.card, Password{"pw1"}, fx.server.identity,
                             Timestamp{100});
  REQUIRE(login.ok());
  auto accepted =
      server_verify_login_t(fx.server, login.value().request, Timestamp{100});
  REQUIRE(accepted.ok());

  SUBCASE("reply older than the window") {
    auto res = user_verify_reply_t(login.value().session,
                                   accepted.value().reply,
                                   Timestamp{100 + kWindow + 1}, kWindow);
    CHECK(!res.ok());
    CHECK(res.reason() == RejectReason::freshness);
  }

  SUBCASE("future reply") {
    auto res = user_verify_reply_t(login.value().session,
                                   accepted.value().reply, Timestamp{99},
                                   kWindow);
    CHECK(!res.ok());
    CHECK(res.reason() == RejectReason::freshness);
  }

  SUBCASE("reply built under another user's secret") {
    auto bob_login = build_login_t(bob.value(), Password{"pw-bob"},
                                   fx.server.identity, Timestamp{100});
    REQUIRE(bob_login.ok());
    auto bob_accept = server_verify_login_t(fx.server,
                                            bob_login.value().request,
                                            Timestamp{100});
    REQUIRE(bob_accept.ok());
    // Bob's reply delivered into Alice's session: c2 binds id and r_j.
    auto res = user_verify_reply_t(login.value().session,
                                   bob_accept.value().reply, Timestamp{100},
                                   kWindow);
    CHECK(!res.ok());
    CHECK(res.reason() == RejectReason::authenticity);
  }

  SUBCASE("flipped reply bit") {
    ServerReplyT forged = accepted.value().reply;
    forged.c2.bytes[31] ^= 0x80;
    auto res = user_verify_reply_t(login.value().session, forged,
                                   Timestamp{100}, kWindow);
    CHECK(!res.ok());
    CHECK(res.reason() == RejectReason::authenticity);
  }
}

TEST_CASE("completeness across a corpus and every delay in the window") {
  std::mt19937_64 word_rng(404);
  Rng rng(8);
  ServerState server = ServerState::create(rng, "acme", kWindow);
  std::vector<std::pair<SmartCard, Password>> cards;
  for (int i = 0; i < 10; ++i) {
    const UserId id{"user-" + std::to_string(i)};
    const Password pw{random_word(word_rng, 8, 20)};
    auto card = register_user(server, id, pw);
    REQUIRE(card.ok());
    cards.emplace_back(std::move(card).value(), pw);
  }

  // Messages age `delay` ticks per hop; both checks then see exactly
  // `delay`, so every delay in [0, window] must complete on both sides.
  std::uint64_t base = 10000;
  for (const auto& [card, pw] : cards) {
    for (std::uint64_t delay : {std::uint64_t{0}, kWindow / 2, kWindow}) {
      auto login = build_login_t(card, pw, server.identity, Timestamp{base});
      REQUIRE(login.ok());
      auto accepted = server_verify_login_t(server, login.value().request,
                                            Timestamp{base + delay});
      REQUIRE(accepted.ok());
      auto key_user = user_verify_reply_t(login.value().session,
                                          accepted.value().reply,
                                          Timestamp{base + 2 * delay},
                                          kWindow);
      REQUIRE(key_user.ok());
      CHECK(key_user.value().key ==
            server_session_key_t(accepted.value().session).key);
      base += 10 * kWindow;  // keep runs apart so replay sets never trigger
    }
  }
}

TEST_CASE("single-bit flips on any message field cause rejection") {
  Fixture fx = Fixture::zero_master();
  std::mt19937_64 rng(0xf11b);

  for (int trial = 0; trial < 100; ++trial) {
    const Timestamp t{1000 + static_cast<std::uint64_t>(trial) * 200};
    auto login =
        build_login_t(fx.card, Password{"pw1"}, fx.server.identity, t);
    REQUIRE(login.ok());
    LoginRequestT request = login.value().request;

    // Flip one random bit in one field of the request.
    const int field = static_cast<int>(rng() % 3);
    if (field == 0) {
      std::string id = request.user_id.str();
      id[rng() % id.size()] ^=
          static_cast<char>(1 << (rng() % 7));  // keep it non-zero-ish
      if (id == request.user_id.str() || id.find('\0') != std::string::npos) {
        continue;
      }
      request.user_id = UserId{id};
    } else if (field == 1) {
      request.t.ticks ^= std::uint64_t{1} << (rng() % 32);
    } else {
      request.c1.bytes[rng() % 32] ^= static_cast<std::uint8_t>(
          1u << (rng() % 8));
    }
    auto res = server_verify_login_t(fx.server, request, t);
    CHECK(!res.ok());
  }

  for (int trial = 0; trial < 100; ++trial) {
    const Timestamp t{100000 + static_cast<std::uint64_t>(trial) * 200};
    auto login =
        build_login_t(fx.card, Password{"pw1"}, fx.server.identity, t);
    REQUIRE(login.ok());
    auto accepted = server_verify_login_t(fx.server, login.value().request, t);
    REQUIRE(accepted.ok());
    ServerReplyT reply = accepted.value().reply;
    if (rng() % 2 == 0) {
      reply.t_prime.ticks ^= std::uint64_t{1} << (rng() % 32);
    } else {
      reply.c2.bytes[rng() % 32] ^=
          static_cast<std::uint8_t>(1u << (rng() % 8));
    }
    auto res = user_verify_reply_t(login.value().session, reply, t, kWindow);
    CHECK(!res.ok());
  }
}

TEST_CASE("session keys are pairwise distinct across 1000 runs") {
  Fixture fx = Fixture::zero_master();
  std::set<std::string> keys;
  for (int run = 0; run < 1000; ++run) {
    const Timestamp t{static_cast<std::uint64_t>(run) * 100 + 1};
    auto login =
        build_login_t(fx.card, Password{"pw1"}, fx.server.identity, t);
    REQUIRE(login.ok());
    auto accepted = server_verify_login_t(fx.server, login.value().request,
                                          Timestamp{t.ticks + 1});
    REQUIRE(accepted.ok());
    auto key = user_verify_reply_t(login.value().session,
                                   accepted.value().reply,
                                   Timestamp{t.ticks + 2}, kWindow);
    REQUIRE(key.ok());
    keys.insert(key.value().key.hex());
  }
  CHECK(keys.size() == 1000);
}
