#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cardproto/crypto.hpp"
#include "cardproto/sha256.hpp"
#include "support/test_util.hpp"

using namespace cardproto;
using testsupport::digest_from_hex;
using testsupport::oracle_hash;
using testsupport::random_bytes;
using testsupport::random_digest;

namespace {

Bytes bytes_of(const std::string& s) { return Bytes(s.begin(), s.end()); }

std::string sha_hex(const Bytes& data) {
  return to_hex(cardproto::sha256(data));
}

}  // namespace

TEST_CASE("sha256 matches published vectors") {
  CHECK(sha_hex({}) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha_hex(bytes_of("abc")) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha_hex(bytes_of(
            "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq")) ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  CHECK(sha_hex(Bytes(1000000, 'a')) ==
        "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("sha256 agrees with the independent reference on random inputs") {
  std::mt19937_64 rng(0xc0ffee);
  for (int i = 0; i < 2000; ++i) {
    const Bytes input = random_bytes(rng, 0, 300);
    CHECK(cardproto::sha256(input) == testsupport::ref_sha256(input));
  }
  // Chunked updates must agree with one-shot hashing.
  for (int i = 0; i < 200; ++i) {
    const Bytes input = random_bytes(rng, 1, 500);
    Sha256 ctx;
    std::size_t pos = 0;
    while (pos < input.size()) {
      const std::size_t chunk =
          std::min<std::size_t>(1 + rng() % 97, input.size() - pos);
      ctx.update(std::span(input.data() + pos, chunk));
      pos += chunk;
    }
    CHECK(ctx.finish() == testsupport::ref_sha256(input));
  }
}

TEST_CASE("encode_fields emits length-prefixed items") {
  CHECK(encode_fields(FieldList{}).empty());
  CHECK(to_hex(encode_fields(FieldList{}.add("A"))) == "0000000141");
  // ["A","B"] and ["AB"] must encode apart: 10 octets vs 6.
  const Bytes two = encode_fields(FieldList{}.add("A").add("B"));
  const Bytes one = encode_fields(FieldList{}.add("AB"));
  CHECK(two.size() == 10);
  CHECK(one.size() == 6);
  CHECK(two != one);
  // Field boundaries move, encodings differ.
  CHECK(to_hex(encode_fields(FieldList{}.add("ab").add("c"))) ==
        "0000000261620000000163");
  CHECK(to_hex(encode_fields(FieldList{}.add("a").add("bc"))) ==
        "0000000161000000026263");
}

TEST_CASE("hash golden values") {
  // hash(H, []) is the digest of the lone prefix octet 0x01.
  CHECK(hash(HashDomain::H, FieldList{}).hex() ==
        "4bf5122f344554c53bde2ebb8cd2b7e3d1600ad631c385a5d7cce23c7785459a");
  // ("ab","c") vs ("a","bc"): boundary-shifted inputs, distinct digests.
  CHECK(hash(HashDomain::H, "ab", "c").hex() ==
        "756eb0b2d50c43a75329fa4410298573148902d65d288cb21658907d912ca43c");
  CHECK(hash(HashDomain::H, "a", "bc").hex() ==
        "17c4431922a0501efb3f806655f1be5314ceb9f7fd81068456812dc24d3c952b");
  CHECK(hash(HashDomain::H, "alice", "pw1").hex() ==
        "39d4bb9e9d340851c014bc22b430b1dbd6e12ce39a812626ba80249648030f6b");
  CHECK(hash(HashDomain::H1, "alice", "pw1").hex() ==
        "aabcffec8b702c46bd30414e706acc7f0aeb50231dca357ac96b20c2e69a4727");
}

TEST_CASE("domain separation: same fields, different functions") {
  const Digest h = hash(HashDomain::H, "alice", "pw1");
  const Digest h1 = hash(HashDomain::H1, "alice", "pw1");
  const Digest h2 = hash(HashDomain::H2, "alice", "pw1");
  const Digest h3 = hash(HashDomain::H3, "alice", "pw1");
  CHECK(h != h1);
  CHECK(h != h2);
  CHECK(h != h3);
  CHECK(h1 != h2);
  CHECK(h1 != h3);
  CHECK(h2 != h3);
}

TEST_CASE("hash is deterministic") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    FieldList fields;
    const int n = static_cast<int>(rng() % 4);
    for (int f = 0; f < n; ++f) {
      fields.add(std::span<const std::uint8_t>(random_bytes(rng, 0, 40)));
    }
    CHECK(hash(HashDomain::H2, fields) == hash(HashDomain::H2, fields));
  }
}

TEST_CASE("xor: self-inverse, identity, involution") {
  std::mt19937_64 rng(21);
  const Digest zero{};
  for (int i = 0; i < 500; ++i) {
    const Digest a = random_digest(rng);
    const Digest b = random_digest(rng);
    CHECK((a ^ a) == zero);
    CHECK((a ^ zero) == a);
    CHECK(((a ^ b) ^ b) == a);
    CHECK((a ^ b) == (b ^ a));
  }
}

TEST_CASE("encode_fields is injective over a random corpus") {
  std::mt19937_64 rng(0xfeed);
  std::map<std::string, std::vector<Bytes>> seen;
  for (int i = 0; i < 10000; ++i) {
    std::vector<Bytes> items;
    FieldList fields;
    const int n = static_cast<int>(rng() % 5);
    for (int f = 0; f < n; ++f) {
      items.push_back(random_bytes(rng, 0, 12));
      fields.add(std::span<const std::uint8_t>(items.back()));
    }
    const std::string encoded = to_hex(encode_fields(fields));
    const auto [it, inserted] = seen.emplace(encoded, items);
    if (!inserted) {
      // Same encoding must mean the very same field list.
      CHECK(it->second == items);
    }
  }
}

TEST_CASE("no hash collisions across random (domain, fields) pairs") {
  std::mt19937_64 rng(0xdead);
  const HashDomain domains[] = {HashDomain::H, HashDomain::H1, HashDomain::H2,
                                HashDomain::H3};
  std::map<std::string, std::pair<int, std::string>> seen;
  for (int i = 0; i < 10000; ++i) {
    const int domain_index = static_cast<int>(rng() % 4);
    FieldList fields;
    std::string fields_key;
    const int n = static_cast<int>(rng() % 4);
    for (int f = 0; f < n; ++f) {
      const Bytes item = random_bytes(rng, 0, 10);
      fields.add(std::span<const std::uint8_t>(item));
      fields_key += to_hex(item) + "|";
    }
    const std::string digest = hash(domains[domain_index], fields).hex();
    const auto [it, inserted] =
        seen.emplace(digest, std::make_pair(domain_index, fields_key));
    if (!inserted) {
      CHECK(it->second == std::make_pair(domain_index, fields_key));
    }
  }
}

TEST_CASE("library hash layout agrees with the oracle recomputation") {
  std::mt19937_64 rng(0xabcd);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Bytes> items;
    FieldList fields;
    const int n = static_cast<int>(rng() % 5);
    for (int f = 0; f < n; ++f) {
      items.push_back(random_bytes(rng, 0, 50));
      fields.add(std::span<const std::uint8_t>(items.back()));
    }
    const std::uint8_t prefixes[] = {0x01, 0x02, 0x03, 0x04};
    const HashDomain domains[] = {HashDomain::H, HashDomain::H1,
                                  HashDomain::H2, HashDomain::H3};
    const int d = static_cast<int>(rng() % 4);
    CHECK(hash(domains[d], fields) == oracle_hash(prefixes[d], items));
  }
}

TEST_CASE("digest hex round-trips and rejects malformed input") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const Digest d = random_digest(rng);
    const auto back = Digest::from_hex(d.hex());
    REQUIRE(back.has_value());
    CHECK(*back == d);
  }
  CHECK(!Digest::from_hex("abc").has_value());
  CHECK(!Digest::from_hex(std::string(63, 'a')).has_value());
  CHECK(!Digest::from_hex(std::string(62, 'a') + "zz").has_value());
  CHECK(!Digest::from_hex("").has_value());
}
