#include <random>

#include "doctest.h"
#include "pca/k1.hpp"
#include "pca/kernel.hpp"
#include "pca/reductions.hpp"
#include "pca/witness.hpp"

using namespace pca;

namespace {

struct Fixture {
  k1::K1Model m;
  StdLib lib;
  Fixture() : lib(build_stdlib(m, 100000)) {}

  bool agree(const EvalOutcome& x, const EvalOutcome& y) const {
    if (x.is_defined() && y.is_defined()) return x.value() == y.value();
    if (x.kind() == OutcomeKind::FuelExhausted ||
        y.kind() == OutcomeKind::FuelExhausted)
      return true;
    return x.kind() == y.kind();
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "pair-application element splits pairs") {
  Element e = red::halting_ce_element(m, lib);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 30; ++t) {
    Element a = m.from_nat(Nat((unsigned long)(rng() % 2000)));
    Element b = m.from_nat(Nat((unsigned long)(rng() % 2000)));
    EvalOutcome lhs = m.apply(e, lib.pair2(a, b), 100000);
    EvalOutcome rhs = m.apply(a, b, 100000);
    CHECK(agree(lhs, rhs));
  }
}

TEST_CASE_FIXTURE(Fixture, "reduction into the pair-halting set") {
  using k1::Prog;
  // One-point partial map: defined exactly at 0.
  Element pe = m.from_nat(k1::encode(Prog::if_zero(
      Prog::input(), Prog::const_nat(Nat(0)), Prog::diverge())));
  Element f = red::m_reduce_to_H(m, lib, pe);
  Element eh = red::halting_ce_element(m, lib);
  for (unsigned long a : {0ul, 1ul, 2ul, 7ul, 30ul}) {
    Element ea = m.from_nat(Nat(a));
    EvalOutcome img = m.apply(f, ea, 100000);
    REQUIRE(img.is_defined());
    EvalOutcome through = m.apply(eh, img.value(), 100000);
    EvalOutcome direct = m.apply(pe, ea, 100000);
    CHECK(agree(through, direct));
  }
}

TEST_CASE_FIXTURE(Fixture, "the two halting problems interreduce") {
  auto [f_kh, f_hk] = red::k_h_equivalence(m, lib);
  std::mt19937_64 rng(42);
  for (int t = 0; t < 30; ++t) {
    Element a = m.from_nat(Nat((unsigned long)(rng() % 2000)));
    Element b = m.from_nat(Nat((unsigned long)(rng() % 2000)));

    EvalOutcome kh = m.apply(f_kh, a, 100000);
    REQUIRE(kh.is_defined());
    CHECK(agree(m.apply(a, a, 100000),
                m.apply(red::halting_ce_element(m, lib), kh.value(), 100000)));

    EvalOutcome hk = m.apply(f_hk, lib.pair2(a, b), 100000);
    REQUIRE(hk.is_defined());
    CHECK(agree(m.apply(a, b, 100000),
                m.apply(hk.value(), hk.value(), 100000)));
  }
}

TEST_CASE_FIXTURE(Fixture, "every shipped halting decider is refuted") {
  for (const auto& [name, d] : red::candidate_halting_deciders(m, lib)) {
    CAPTURE(name);
    Witness w = red::refute_halting_decider(m, lib, d, 100000);
    CHECK(w.kind == "halting-decider");
    CHECK(!w.clause.empty());
    CHECK(!w.transcript.empty());
    ReplayReport rep = replay_witness(m, w);
    CHECK(rep.ok);
  }
}

TEST_CASE_FIXTURE(Fixture, "every shipped separator is refuted") {
  for (const auto& [name, c] : red::candidate_separators(m, lib)) {
    CAPTURE(name);
    Witness w = red::refute_separator(m, lib, c, 100000);
    CHECK(!w.clause.empty());
    CHECK(!w.transcript.empty());
    CHECK(replay_witness(m, w).ok);
  }
}

TEST_CASE_FIXTURE(Fixture, "every shipped total extension is refuted") {
  Element c01 = red::make_c01(m, lib);
  for (const auto& [name, f] : red::candidate_total_extensions(m, lib)) {
    CAPTURE(name);
    Witness w = red::refute_total_extension(m, lib, f, c01, 100000);
    CHECK(!w.clause.empty());
    CHECK(!w.transcript.empty());
    CHECK(replay_witness(m, w).ok);
  }
}

TEST_CASE_FIXTURE(Fixture, "separator element c01 distinguishes 1 from the rest") {
  Element c01 = red::make_c01(m, lib);
  EvalOutcome on1 = m.apply(c01, lib.numeral(1), 100000);
  REQUIRE(on1.is_defined());
  CHECK(on1.value() == lib.numeral(1));
  std::vector<Element> rest = {lib.numeral(0), lib.numeral(2), lib.numeral(5),
                               lib.k, m.from_nat(Nat(500))};
  for (Element e : rest) {
    EvalOutcome o = m.apply(c01, e, 100000);
    REQUIRE(o.is_defined());
    CHECK(o.value() == lib.numeral(0));
  }
}

TEST_CASE_FIXTURE(Fixture, "diagonal element self-applies") {
  Element d = red::diagonal_element(m, lib);
  Element a = lib.k;
  EvalOutcome lhs = m.apply(d, a, 100000);
  EvalOutcome rhs = m.apply(a, a, 100000);
  CHECK(agree(lhs, rhs));
}

TEST_CASE_FIXTURE(Fixture, "totalizer refutation under the identity numbering claim") {
  Element totalizer = m.from_nat(k1::precomplete_totalizer(
      m.nat_of(red::diagonal_element(m, lib))));
  Element c01 = red::make_c01(m, lib);
  Witness w = red::refute_precomplete_injective(
      m, lib, totalizer, k1::identity_kernel(), c01, 100000);
  CHECK(w.kind == "precomplete-1-1");
  CHECK(!w.transcript.empty());
  CHECK(replay_witness(m, w).ok);

  // Under a non-identity kernel the refuter refuses rather than pretending.
  CHECK_THROWS_AS(red::refute_precomplete_injective(m, lib, totalizer,
                                                    k1::extensional_kernel(),
                                                    c01, 100000),
                  PcaError);
}

TEST_CASE_FIXTURE(Fixture, "extension transfer composes with the reduction") {
  // Even a bogus "extension" transfers: the composed element applies it
  // after the reduction map, so it is defined wherever the input is.
  Element ident = lib.i;
  Element r = red::extension_transfer(m, lib, ident);
  EvalOutcome o = m.apply(r, m.from_nat(Nat(12)), 100000);
  CHECK(o.is_defined());
}

TEST_CASE_FIXTURE(Fixture, "witness replay notices tampering") {
  auto cands = red::candidate_halting_deciders(m, lib);
  REQUIRE(!cands.empty());
  Witness w = red::refute_halting_decider(m, lib, cands[0].second, 100000);
  REQUIRE(!w.transcript.empty());
  Witness tampered = w;
  tampered.transcript[0].kind =
      tampered.transcript[0].kind == OutcomeKind::Defined
          ? OutcomeKind::ProvenDivergent
          : OutcomeKind::Defined;
  ReplayReport rep = replay_witness(m, tampered);
  CHECK(!rep.ok);
  CHECK(rep.failed_index == 0);
}
