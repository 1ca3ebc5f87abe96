#include "doctest.h"
#include "pca/errors.hpp"
#include "pca/k2.hpp"
#include "pca/nat.hpp"
#include "pca/witness.hpp"

using namespace pca;
using namespace pca::k2;

TEST_CASE("periodic sequences report their coordinates") {
  K2Model m;
  Element x = m.periodic({Nat(4), Nat(7)}, {Nat(1), Nat(0)});
  unsigned long expect[] = {4, 7, 1, 0, 1, 0, 1, 0};
  for (unsigned long i = 0; i < 8; ++i) {
    Outcome<Nat> o = m.coord(x, Nat(i), 100);
    REQUIRE(o.is_defined());
    CHECK(o.value() == expect[i]);
  }
  CHECK(m.coord(m.all_zeros(), Nat(99), 100).value() == 0);
  CHECK(m.coord(m.all_ones(), Nat(99), 100).value() == 1);
}

TEST_CASE("interning is stable") {
  K2Model m;
  CHECK(m.all_zeros() == m.all_zeros());
  CHECK(m.periodic({}, {Nat(0)}) == m.all_zeros());
  CHECK(m.all_zeros() != m.all_ones());
  Element a = m.all_zeros(), b = m.all_ones();
  CHECK(m.applied(a, b) == m.applied(a, b));
}

TEST_CASE("the copy operator is total exactly on the zero sequence") {
  K2Model m;
  auto [alpha, beta] = make_counterexample_pair(m);

  Element app0 = m.applied(alpha, m.all_zeros());
  for (unsigned long i = 0; i < 6; ++i) {
    std::vector<Nat> reads;
    Outcome<Nat> o = m.coord(app0, Nat(i), 1000, &reads);
    REQUIRE(o.is_defined());
    CHECK(o.value() == 0);
    // Producing coordinate i inspects the argument positions 0..i.
    CHECK(reads.size() == i + 1);
  }

  // One stray 1 anywhere kills the whole application.
  Element spiked = m.periodic({Nat(0), Nat(0), Nat(1)}, {Nat(0)});
  Outcome<Nat> dead = m.coord(m.applied(alpha, spiked), Nat(5), 1000);
  CHECK(dead.kind() == OutcomeKind::ProvenDivergent);
  // Coordinates before the spike are still produced.
  CHECK(m.coord(m.applied(alpha, spiked), Nat(1), 1000).is_defined());
}

TEST_CASE("the complement operator is total exactly off the zero sequence") {
  K2Model m;
  auto [alpha, beta] = make_counterexample_pair(m);

  Element hit = m.periodic({Nat(0), Nat(3)}, {Nat(0)});
  for (unsigned long i = 0; i < 4; ++i) {
    Outcome<Nat> o = m.coord(m.applied(beta, hit), Nat(i), 1000);
    REQUIRE(o.is_defined());
    CHECK(o.value() == 1);
  }

  // On the zero sequence it scans forever: fuel runs out, never a proof.
  Outcome<Nat> scan = m.coord(m.applied(beta, m.all_zeros()), Nat(0), 500);
  CHECK(scan.kind() == OutcomeKind::FuelExhausted);
}

TEST_CASE("application materialization reports reads and stop reason") {
  K2Model m;
  auto [alpha, beta] = make_counterexample_pair(m);
  K2ApplyResult r = k2_apply(m, alpha, m.all_zeros(), 5, 10000);
  CHECK(r.stop == OutcomeKind::Defined);
  REQUIRE(r.values.size() == 5);
  for (const Nat& v : r.values) CHECK(v == 0);
  REQUIRE(r.reads.size() == 5);
  CHECK(r.reads[4].size() == 5);
  CHECK(r.queries > 0);

  K2ApplyResult d = k2_apply(m, alpha, m.all_ones(), 5, 10000);
  CHECK(d.stop == OutcomeKind::ProvenDivergent);
  CHECK(d.values.empty());
}

TEST_CASE("fuel accounting for coordinate production") {
  K2Model m;
  auto [alpha, beta] = make_counterexample_pair(m);
  Fuel queries = 0;
  Outcome<Nat> o = m.coord(m.applied(alpha, m.all_zeros()), Nat(3), 1000,
                           nullptr, &queries);
  REQUIRE(o.is_defined());
  CHECK(queries > 0);
  // The identical probe under exactly that budget still lands.
  Outcome<Nat> again = m.coord(m.applied(alpha, m.all_zeros()), Nat(3), queries);
  CHECK(again.is_defined());
  // One consultation fewer must exhaust, not lie.
  if (queries > 1) {
    Outcome<Nat> starved =
        m.coord(m.applied(alpha, m.all_zeros()), Nat(3), queries - 1);
    CHECK(starved.kind() == OutcomeKind::FuelExhausted);
  }
}

TEST_CASE("every candidate decider rule gets a verified flip witness") {
  K2Model m;
  auto cands = candidate_decider_rules(m);
  CHECK(cands.size() == 5);
  for (const auto& [name, gamma] : cands) {
    CAPTURE(name);
    Witness w = refute_continuous_decider(m, gamma, m.all_zeros(),
                                          m.all_ones(), 2000);
    CHECK(w.kind == "continuous-decider");
    CHECK(!w.clause.empty());
    CHECK(!w.transcript.empty());
    CHECK(replay_witness(m, w).ok);
  }
}

TEST_CASE("inconsistent rules are rejected at registration") {
  K2Model m;
  // A "rule" whose answer keeps changing as the prefix grows is not a
  // function on sequences and must be refused up front.
  int calls = 0;
  CHECK_THROWS_AS(
      m.rule_element("mind-changer",
                     [&calls](const Nat&, const std::vector<Nat>& prefix) {
                       if (prefix.empty()) return RuleReply::read();
                       return RuleReply::answer(Nat(calls++));
                     }),
      PcaError);
}

TEST_CASE("rule elements act as reals through the coordinate view") {
  K2Model m;
  // The operator that answers v+1 at query pair(n, s): its own coordinates
  // are readable like any sequence.
  auto [alpha, beta] = make_counterexample_pair(m);
  Outcome<Nat> o = m.coord(alpha, Nat(0), 100);
  REQUIRE(o.is_defined());
  // Decoding coordinate 0 of the rule: query 0 = pair(0, seq []), i.e. the
  // empty prefix at coordinate 0 — the copy rule wants to read more, so 0.
  CHECK(o.value() == 0);
}
