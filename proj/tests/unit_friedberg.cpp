#include <map>
#include <set>

#include "doctest.h"
#include "pca/friedberg.hpp"
#include "pca/k1.hpp"
#include "pca/witness.hpp"

using namespace pca;
using namespace pca::fb;

TEST_CASE("odd codes enumerate the constant functions") {
  Sim sim;
  for (unsigned long v : {0ul, 1ul, 2ul, 10ul, 33ul}) {
    Nat code(2 * v + 1);
    for (unsigned long a : {0ul, 5ul, 100ul}) {
      Outcome<Nat> o = sim.psi_apply(code, Nat(a), 50);
      REQUIRE(o.is_defined());
      CHECK(o.value() == v);
    }
  }
}

TEST_CASE("code zero answers nothing at any budget") {
  Sim sim;
  CHECK(sim.psi_apply(Nat(0), Nat(3), 10).kind() == OutcomeKind::FuelExhausted);
  CHECK(sim.psi_apply(Nat(0), Nat(3), 2000).kind() ==
        OutcomeKind::FuelExhausted);
}

TEST_CASE("stage bookkeeping: appointments are even, fresh, one per stage") {
  Sim sim;
  sim.advance_to(1500);
  CHECK(sim.stage() == 1500);

  std::map<std::uint64_t, int> appoints_per_stage;
  std::set<std::uint64_t> codes;
  for (const StageEvent& ev : sim.events()) {
    if (ev.kind != StageEvent::Kind::Appoint) continue;
    appoints_per_stage[ev.stage]++;
    CHECK(ev.x % 2 == 0);
    CHECK(codes.insert(ev.x).second);  // never reused
  }
  for (const auto& [stage, n] : appoints_per_stage) CHECK(n == 1);

  Sim::Invariants inv = sim.check_invariants();
  CHECK(inv.ok);
  CHECK(inv.violations.empty());
}

TEST_CASE("defined outcomes are stable as the stage budget grows") {
  Sim sim;
  std::vector<std::pair<Nat, Nat>> defined_points;
  for (unsigned long code = 0; code < 40; ++code)
    for (unsigned long a = 0; a < 5; ++a) {
      Outcome<Nat> o = sim.psi_apply(Nat(code), Nat(a), 800);
      if (o.is_defined()) defined_points.emplace_back(Nat(code), Nat(a));
    }
  REQUIRE(!defined_points.empty());
  std::map<std::pair<Nat, Nat>, Nat> small;
  for (const auto& [c, a] : defined_points)
    small[{c, a}] = sim.psi_apply(c, a, 800).value();
  for (const auto& [key, v] : small) {
    Outcome<Nat> o = sim.psi_apply(key.first, key.second, 2500);
    REQUIRE(o.is_defined());
    CHECK(o.value() == v);
  }
}

TEST_CASE("the doubling program's follower acts as k") {
  Sim sim;
  Sim::KReport rep = sim.find_k(3000, 10, 17);
  REQUIRE(rep.found);
  CHECK(rep.appointed_at == 2415);  // pair(69, 0): the stage owned by it
  CHECK(rep.samples.size() == 10);
  for (const Sim::KSample& s : rep.samples) {
    CHECK(s.image == 2 * s.a + 1);
    CHECK(s.roundtrip == s.a);
  }

  Nat k_code((unsigned long)rep.code);
  Outcome<Nat> img = sim.psi_apply(k_code, Nat(5), 3000);
  REQUIRE(img.is_defined());
  CHECK(img.value() == 11);
  Outcome<Nat> back = sim.psi_apply(Nat(11), Nat(42), 3000);
  REQUIRE(back.is_defined());
  CHECK(back.value() == 5);

  // It never gets released: the enumeration protects it forever (spot-check
  // a horizon well past its appointment).
  CHECK(sim.released().find(to_u64(k_code)) == sim.released().end());
  CHECK(sim.followers().count(to_u64(k1::double_plus_one_code())) == 1);
}

TEST_CASE("released entries are frozen: values never change afterwards") {
  Sim sim;
  sim.advance_to(7000);  // first release lands mid-run; 7000 is well past it
  REQUIRE(!sim.released().empty());
  auto [x, fz] = *sim.released().begin();
  std::map<std::uint64_t, Nat> before = sim.materialize_even(x);
  CHECK(!before.empty());
  sim.advance_to(9000);
  CHECK(sim.materialize_even(x) == before);
  // And the frozen table is what psi_apply serves.
  for (const auto& [mm, v] : before) {
    Outcome<Nat> o = sim.psi_apply(Nat(x), Nat(mm), 9000);
    REQUIRE(o.is_defined());
    CHECK(o.value() == v);
  }
}

TEST_CASE("release events carry a rule index and differ from their sources") {
  Sim sim;
  sim.advance_to(8000);
  bool saw_release = false;
  for (const StageEvent& ev : sim.events()) {
    if (ev.kind != StageEvent::Kind::Release) continue;
    saw_release = true;
    CHECK(ev.rule >= 1);
    CHECK(ev.rule <= 3);
    CHECK(!ev.detail.empty());
  }
  CHECK(saw_release);

  // Pairwise incompatibility of frozen entries, checked directly: for every
  // two frozen tables there is a point where they visibly disagree, or one
  // defines a point the other provably never will.
  const auto& rel = sim.released();
  for (auto i = rel.begin(); i != rel.end(); ++i) {
    auto mi = sim.materialize_even(i->first);
    for (auto j = std::next(i); j != rel.end(); ++j) {
      auto mj = sim.materialize_even(j->first);
      bool distinct = false;
      for (const auto& [mm, v] : mi) {
        auto it = mj.find(mm);
        if (it != mj.end() && it->second != v) distinct = true;
      }
      if (!distinct) {
        // No visible disagreement yet: at least one side must hold a point
        // the other misses (their futures are frozen, so this is final).
        bool i_extra = false, j_extra = false;
        for (const auto& [mm, v] : mi)
          if (!mj.count(mm)) i_extra = true;
        for (const auto& [mm, v] : mj)
          if (!mi.count(mm)) j_extra = true;
        CHECK((i_extra || j_extra));
      }
    }
  }
}

TEST_CASE("an injected duplicate trips the invariant checker") {
  Sim sim;
  sim.advance_to(7000);
  REQUIRE(!sim.released().empty());
  sim.inject_frozen_duplicate_for_test(sim.released().begin()->first);
  Sim::Invariants inv = sim.check_invariants();
  CHECK(!inv.ok);
  REQUIRE(!inv.violations.empty());
}

TEST_CASE("refute-s produces replayable witnesses across the family") {
  Sim sim;
  PsiModel pm(sim);
  const Fuel budget = 3000;
  sim.advance_to(budget);

  std::vector<Nat> sigmas = {Nat(0), Nat(1), Nat(9), Nat(95)};
  Sim::KReport rep = sim.find_k(budget, 2, 3);
  REQUIRE(rep.found);
  sigmas.emplace_back((unsigned long)rep.code);

  for (const Nat& sigma : sigmas) {
    CAPTURE(sigma.get_str());
    Witness w = refute_s_candidate(sim, pm, sigma, budget, 7);
    CHECK(w.kind == "s-candidate");
    CHECK(!w.transcript.empty());
    CHECK(w.clause.rfind("no violation", 0) != 0);
    CHECK(replay_witness(pm, w).ok);
  }
}

TEST_CASE("the psi model wraps the enumeration as a pas") {
  Sim sim;
  PsiModel pm(sim);
  Element three = pm.from_nat(Nat(3));
  CHECK(pm.nat_of(three) == 3);
  CHECK(pm.from_nat(Nat(3)) == three);
  // 3 = 2·1+1 is the constant-1 function.
  EvalOutcome o = pm.apply(three, pm.from_nat(Nat(40)), 100);
  REQUIRE(o.is_defined());
  CHECK(pm.nat_of(o.value()) == 1);
  CHECK(pm.resolve("3").has_value());
}
