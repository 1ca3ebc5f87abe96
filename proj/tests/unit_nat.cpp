#include <random>

#include "doctest.h"
#include "pca/nat.hpp"

using namespace pca;

TEST_CASE("cantor pairing round-trips") {
  for (unsigned long a = 0; a < 40; ++a)
    for (unsigned long b = 0; b < 40; ++b) {
      auto [x, y] = cantor_unpair(cantor_pair(Nat(a), Nat(b)));
      CHECK(x == a);
      CHECK(y == b);
    }

  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    Nat a((unsigned long)(rng() % 1000000));
    Nat b((unsigned long)(rng() % 1000000));
    auto [x, y] = cantor_unpair(cantor_pair(a, b));
    CHECK(x == a);
    CHECK(y == b);
  }
}

TEST_CASE("cantor pairing is a bijection on an initial segment") {
  // The first n(n+1)/2-ish codes are hit exactly once by small pairs.
  std::vector<int> seen(300, 0);
  for (unsigned long a = 0; a < 30; ++a)
    for (unsigned long b = 0; b < 30; ++b) {
      Nat c = cantor_pair(Nat(a), Nat(b));
      if (c < 300) seen[to_u64(c)]++;
    }
  for (int i = 0; i < 300; ++i) CHECK(seen[i] == 1);
}

TEST_CASE("pairing anchor values") {
  CHECK(cantor_pair(Nat(0), Nat(0)) == 0);
  CHECK(cantor_pair(Nat(1), Nat(0)) == 1);
  CHECK(cantor_pair(Nat(0), Nat(1)) == 2);
  CHECK(cantor_pair(Nat(69), Nat(0)) == 2415);
}

TEST_CASE("bijective binary round-trips and is ordered") {
  for (unsigned long n = 0; n < 500; ++n) {
    auto bits = bits_of_nat(Nat(n));
    CHECK(nat_of_bits(bits) == n);
  }
  // Distinct lengths: 0 has zero bits, 1..2 one bit, 3..6 two bits, ...
  CHECK(bits_of_nat(Nat(0)).empty());
  CHECK(bits_of_nat(Nat(1)).size() == 1);
  CHECK(bits_of_nat(Nat(2)).size() == 1);
  CHECK(bits_of_nat(Nat(3)).size() == 2);
  CHECK(bits_of_nat(Nat(6)).size() == 2);
  CHECK(bits_of_nat(Nat(7)).size() == 3);

  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    Nat n = Nat((unsigned long)rng()) * Nat((unsigned long)(rng() % 1000 + 1));
    CHECK(nat_of_bits(bits_of_nat(n)) == n);
  }
}

TEST_CASE("sequence codes") {
  CHECK(seq_encode({}) == 0);
  CHECK(seq_encode({Nat(0)}) == cantor_pair(Nat(0), Nat(0)) + 1);

  std::vector<Nat> s = {Nat(3), Nat(1), Nat(4)};
  std::vector<Nat> head = {Nat(3), Nat(1)};
  CHECK(seq_encode(s) == cantor_pair(seq_encode(head), Nat(4)) + 1);
  CHECK(seq_decode(seq_encode(s)) == s);

  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    std::vector<Nat> xs;
    std::size_t len = rng() % 6;
    for (std::size_t j = 0; j < len; ++j) xs.emplace_back((unsigned long)(rng() % 50));
    CHECK(seq_decode(seq_encode(xs)) == xs);
  }
}

TEST_CASE("query codes combine coordinate and prefix") {
  std::vector<Nat> p = {Nat(1), Nat(0)};
  CHECK(query_code(Nat(5), p) == cantor_pair(Nat(5), seq_encode(p)));
  CHECK(query_code(Nat(5), p) != query_code(Nat(6), p));
  CHECK(query_code(Nat(5), p) != query_code(Nat(5), {Nat(1), Nat(1)}));
}

TEST_CASE("nat_brief elides huge values deterministically") {
  CHECK(nat_brief(Nat(12345)) == "12345");
  Nat big(1);
  for (int i = 0; i < 40; ++i) big *= 1000000;  // 241 digits
  std::string s1 = nat_brief(big), s2 = nat_brief(big);
  CHECK(s1 == s2);
  CHECK(s1.size() < 80);
  CHECK(s1.find("...") != std::string::npos);
}

TEST_CASE("to_u64 guards against silent truncation") {
  CHECK(to_u64(Nat(42)) == 42);
  CHECK(fits_u64(Nat(42)));
  Nat big(1);
  for (int i = 0; i < 5; ++i) big *= 1000000000;
  CHECK(!fits_u64(big));
  CHECK_THROWS(to_u64(big));
}
