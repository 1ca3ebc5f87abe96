#include <random>

#include "doctest.h"
#include "pca/k1.hpp"
#include "pca/nat.hpp"

using namespace pca;
using namespace pca::k1;

TEST_CASE("program codec round-trips") {
  std::vector<ProgPtr> ps = {
      Prog::input(),
      Prog::const_nat(Nat(0)),
      Prog::const_nat(Nat(123456789)),
      Prog::succ(Prog::input()),
      Prog::dbl(Prog::succ(Prog::input())),
      Prog::pred(Prog::input()),
      Prog::pair(Prog::input(), Prog::const_nat(Nat(3))),
      Prog::fst(Prog::input()),
      Prog::snd(Prog::input()),
      Prog::if_zero(Prog::input(), Prog::const_nat(Nat(1)), Prog::diverge()),
      Prog::eq(Prog::input(), Prog::const_nat(Nat(7))),
      Prog::apply(Prog::fst(Prog::input()), Prog::snd(Prog::input())),
      Prog::smn_node(Prog::fst(Prog::input()), Prog::snd(Prog::input())),
      Prog::diverge(),
  };
  for (const ProgPtr& p : ps) {
    Nat c = encode(p);
    CHECK(print_prog(decode(c)) == print_prog(p));
    CHECK(encode(decode(c)) == c);
  }
}

TEST_CASE("every natural decodes to some program") {
  // The decoder is total: junk padding and truncated streams fall back to
  // a diverging program rather than failing.
  for (unsigned long n = 0; n < 2000; ++n) {
    ProgPtr p = decode(Nat(n));
    CHECK(p != nullptr);
  }
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    Nat n = Nat((unsigned long)rng()) * Nat((unsigned long)(rng() % 5000 + 1));
    CHECK(decode(n) != nullptr);
  }
}

TEST_CASE("program text round-trips") {
  ProgPtr p = Prog::if_zero(Prog::eq(Prog::input(), Prog::const_nat(Nat(4))),
                            Prog::dbl(Prog::input()), Prog::diverge());
  CHECK(print_prog(parse_prog(print_prog(p))) == print_prog(p));
  CHECK(encode(parse_prog(print_prog(p))) == encode(p));
}

TEST_CASE("frozen landmark codes") {
  CHECK(double_plus_one_code() == 69);
  CHECK(diverge_code() == 254);
  // Nothing smaller computes a ↦ 2a+1 on inputs 0 and 1.
  for (unsigned long c = 0; c < 69; ++c) {
    bool matches = true;
    for (unsigned long a = 0; a < 2 && matches; ++a) {
      Outcome<Nat> o = run(Nat(c), Nat(a), 4000);
      matches = o.is_defined() && o.value() == 2 * a + 1;
    }
    CHECK(!matches);
  }
  Outcome<Nat> d = run(diverge_code(), Nat(5), 100000);
  CHECK(d.kind() == OutcomeKind::ProvenDivergent);
}

TEST_CASE("basic program runs") {
  Nat echo = encode(Prog::input());
  Outcome<Nat> e7 = run(echo, Nat(7), 1000);
  REQUIRE(e7.is_defined());
  CHECK(e7.value() == 7);

  Nat s4 = encode(Prog::succ(Prog::input()));
  CHECK(run(s4, Nat(4), 1000).value() == 5);

  Nat dp1 = double_plus_one_code();
  for (unsigned long a : {0ul, 1ul, 2ul, 10ul, 999ul})
    CHECK(run(dp1, Nat(a), 10000).value() == 2 * a + 1);

  // Saturating predecessor.
  Nat pd = encode(Prog::pred(Prog::input()));
  CHECK(run(pd, Nat(0), 1000).value() == 0);
  CHECK(run(pd, Nat(9), 1000).value() == 8);
}

TEST_CASE("equality primitive answers zero exactly on equal arguments") {
  Nat prog = encode(Prog::eq(Prog::fst(Prog::input()), Prog::snd(Prog::input())));
  for (unsigned long a = 0; a < 8; ++a)
    for (unsigned long b = 0; b < 8; ++b) {
      Outcome<Nat> o = run(prog, cantor_pair(Nat(a), Nat(b)), 10000);
      REQUIRE(o.is_defined());
      CHECK((o.value() == 0) == (a == b));
    }
}

TEST_CASE("pairing primitives agree with the ambient pairing") {
  Nat mk = encode(Prog::pair(Prog::input(), Prog::succ(Prog::input())));
  Outcome<Nat> o = run(mk, Nat(6), 1000);
  REQUIRE(o.is_defined());
  CHECK(o.value() == cantor_pair(Nat(6), Nat(7)));
  Nat f = encode(Prog::fst(Prog::input()));
  Nat s = encode(Prog::snd(Prog::input()));
  CHECK(run(f, o.value(), 1000).value() == 6);
  CHECK(run(s, o.value(), 1000).value() == 7);
}

TEST_CASE("two-argument convention and smn") {
  // run2(c, a, x) fixes the first argument of a paired-input program.
  Nat addish = encode(Prog::pair(Prog::fst(Prog::input()), Prog::snd(Prog::input())));
  CHECK(run2(addish, Nat(3), Nat(4), 10000).value() == cantor_pair(Nat(3), Nat(4)));

  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    Nat a((unsigned long)(rng() % 200));
    Nat x((unsigned long)(rng() % 200));
    Nat frozen = smn(addish, a);
    Outcome<Nat> lhs = run(frozen, x, 100000);
    Outcome<Nat> rhs = run2(addish, a, x, 100000);
    REQUIRE(lhs.is_defined());
    REQUIRE(rhs.is_defined());
    CHECK(lhs.value() == rhs.value());
  }
}

TEST_CASE("combinator codes satisfy their laws") {
  Nat k = k_code(), s = s_code();
  std::mt19937_64 rng(32);
  for (int t = 0; t < 25; ++t) {
    Nat a((unsigned long)(rng() % 500));
    Nat b((unsigned long)(rng() % 500));
    Nat c((unsigned long)(rng() % 500));
    Outcome<Nat> ka = run(k, a, 100000);
    REQUIRE(ka.is_defined());
    Outcome<Nat> kab = run(ka.value(), b, 100000);
    REQUIRE(kab.is_defined());
    CHECK(kab.value() == a);

    Outcome<Nat> sa = run(s, a, 100000);
    REQUIRE(sa.is_defined());
    Outcome<Nat> sab = run(sa.value(), b, 100000);
    REQUIRE(sab.is_defined());

    // s a b c ≃ (a c)(b c) — compare under a generous budget.
    Outcome<Nat> lhs = run(sab.value(), c, 200000);
    Outcome<Nat> ac = run(a, c, 200000);
    Outcome<Nat> bc = run(b, c, 200000);
    Outcome<Nat> rhs = [&]() -> Outcome<Nat> {
      if (!ac.is_defined()) return ac;
      if (!bc.is_defined()) return bc;
      return run(ac.value(), bc.value(), 200000);
    }();
    if (lhs.is_defined() && rhs.is_defined()) CHECK(lhs.value() == rhs.value());
    else if (lhs.kind() != OutcomeKind::FuelExhausted &&
             rhs.kind() != OutcomeKind::FuelExhausted)
      CHECK(lhs.kind() == rhs.kind());
  }
}

TEST_CASE("outcomes are stable as fuel grows") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 60; ++t) {
    Nat c((unsigned long)(rng() % 3000));
    Nat x((unsigned long)(rng() % 100));
    Outcome<Nat> small = run(c, x, 300);
    Outcome<Nat> big = run(c, x, 30000);
    if (small.is_defined()) {
      REQUIRE(big.is_defined());
      CHECK(big.value() == small.value());
      CHECK(big.spent() == small.spent());  // exact halting step count
    }
    if (small.kind() == OutcomeKind::ProvenDivergent)
      CHECK(big.kind() == OutcomeKind::ProvenDivergent);
  }
}

TEST_CASE("spent on a defined run is the exact halting step count") {
  Nat prog = encode(Prog::succ(Prog::succ(Prog::input())));
  Outcome<Nat> o = run(prog, Nat(1), 1000);
  REQUIRE(o.is_defined());
  Fuel exact = o.spent();
  CHECK(exact > 0);
  // Exactly `exact` steps suffice; one fewer does not.
  CHECK(run(prog, Nat(1), exact).is_defined());
  CHECK(run(prog, Nat(1), exact - 1).kind() == OutcomeKind::FuelExhausted);
}

TEST_CASE("totalizer collapses definedness") {
  // Where b·a is defined its value names a function; the totalized code must
  // compute that same function, and must itself halt everywhere.
  Nat b = encode(Prog::if_zero(Prog::input(),
                               Prog::const_nat(double_plus_one_code()),
                               Prog::diverge()));
  Nat tot = precomplete_totalizer(b);
  Outcome<Nat> in_dom = run(tot, Nat(0), 1u << 16);
  REQUIRE(in_dom.is_defined());
  Outcome<Nat> via = run(in_dom.value(), Nat(77), 1u << 16);
  REQUIRE(via.is_defined());
  CHECK(via.value() == 2 * 77 + 1);

  Outcome<Nat> off_dom = run(tot, Nat(5), 1u << 16);
  REQUIRE(off_dom.is_defined());  // the totalized code never diverges
}

TEST_CASE("numbering kernels") {
  K1Model m;
  std::vector<Element> probes;
  for (unsigned long j = 0; j < 5; ++j) probes.push_back(m.from_nat(Nat(j)));

  NumberingKernel idk = identity_kernel();
  CHECK(idk.is_identity);
  Element e4 = m.from_nat(Nat(4)), e5 = m.from_nat(Nat(5));
  CHECK(!idk.agrees(m, e4, e4, probes, 1000).distinguished);
  CHECK(idk.agrees(m, e4, e5, probes, 1000).distinguished);

  NumberingKernel ext = extensional_kernel();
  CHECK(!ext.is_identity);
  // Distinct codes for the same function pass the extensional probes...
  Nat c1 = encode(Prog::succ(Prog::input()));
  Nat c2 = encode(Prog::succ(Prog::pred(Prog::succ(Prog::input()))));
  CHECK(c1 != c2);
  CHECK(!ext.agrees(m, m.from_nat(c1), m.from_nat(c2), probes, 1u << 14)
             .distinguished);
  // ...while observably different codes are told apart, with the probe named.
  Nat c3 = encode(Prog::dbl(Prog::input()));
  KernelVerdict v =
      ext.agrees(m, m.from_nat(c1), m.from_nat(c3), probes, 1u << 14);
  CHECK(v.distinguished);
  CHECK(v.probe.has_value());
}

TEST_CASE("model wrapper interns naturals stably") {
  K1Model m;
  Element a = m.from_nat(Nat(10));
  Element b = m.from_nat(Nat(11));
  CHECK(a != b);
  CHECK(m.from_nat(Nat(10)) == a);
  CHECK(m.nat_of(a) == 10);
  CHECK(m.resolve("10").has_value());
  CHECK(*m.resolve("10") == a);
  CHECK(m.resolve("k").has_value());
  CHECK(m.resolve("s").has_value());
  auto dp = m.divergent_pair();
  REQUIRE(dp.has_value());
  EvalOutcome o = m.apply(dp->first, dp->second, 100000);
  CHECK(o.kind() == OutcomeKind::ProvenDivergent);
}
