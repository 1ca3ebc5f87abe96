#include "pca/suite.hpp"

#include <array>
#include <functional>
#include <random>

#include "pca/errors.hpp"
#include "pca/finite.hpp"
#include "pca/friedberg.hpp"
#include "pca/k1.hpp"
#include "pca/k2.hpp"
#include "pca/kernel.hpp"
#include "pca/oracle.hpp"
#include "pca/reductions.hpp"
#include "pca/term.hpp"
#include "pca/witness.hpp"

namespace pca {

namespace {

TermPtr ce(Element e) { return Term::constant("_", e); }

// Kleene agreement under a fuel bound: defined values must match, proven
// divergence must match; a fuel-exhausted side can neither confirm nor
// refute, so it counts as (flagged) agreement.
bool outcomes_agree(const EvalOutcome& x, const EvalOutcome& y,
                    std::size_t* undecided) {
  if (x.is_defined() && y.is_defined()) return x.value() == y.value();
  if (x.kind() == OutcomeKind::FuelExhausted ||
      y.kind() == OutcomeKind::FuelExhausted) {
    if (undecided) ++*undecided;
    return true;
  }
  return x.kind() == y.kind();
}

// Strict application of two already-evaluated halves: a failed half is the
// whole result, in evaluation order.
EvalOutcome strict_join(StdLib& lib, const EvalOutcome& ac,
                        const EvalOutcome& bc) {
  if (!ac.is_defined()) return ac;
  if (!bc.is_defined()) return bc;
  return lib.apply_chain({ac.value(), bc.value()});
}

bool witness_ok(Model& m, const Witness& w) {
  return !w.transcript.empty() && !w.clause.empty() &&
         replay_witness(m, w).ok;
}

}  // namespace

CriterionResult crit_combinator_laws(std::uint64_t seed) {
  CriterionResult res;
  res.id = "combinator-laws";

  k1::K1Model m;
  StdLib lib = build_stdlib(m, 100000);
  std::mt19937_64 rng(seed ^ 0xfef1u);

  std::size_t undecided = 0;
  std::string failure;
  bool ok = true;
  for (int t = 0; t < 200 && ok; ++t) {
    Element a = m.from_nat(Nat((unsigned long)(rng() % 4000)));
    Element b = m.from_nat(Nat((unsigned long)(rng() % 4000)));
    Element c = m.from_nat(Nat((unsigned long)(rng() % 4000)));

    EvalOutcome kab = lib.apply_chain({lib.k, a, b});
    if (!kab.is_defined() || kab.value() != a) {
      ok = false;
      failure = "projection law k a b = a";
      break;
    }
    EvalOutcome sab = lib.apply_chain({lib.s, a, b});
    if (!sab.is_defined()) {
      ok = false;
      failure = "s a b must be defined";
      break;
    }
    EvalOutcome lhs = lib.apply_chain({sab.value(), c});
    EvalOutcome ac = lib.apply_chain({a, c});
    EvalOutcome bc = lib.apply_chain({b, c});
    EvalOutcome rhs = strict_join(lib, ac, bc);
    if (!outcomes_agree(lhs, rhs, &undecided)) {
      ok = false;
      failure = "substitution law s a b c vs (a c)(b c)";
    }
  }

  res.pass = ok;
  res.details["triples"] = 200;
  res.details["undecided"] = undecided;
  if (!ok) res.details["failure"] = failure;
  return res;
}

namespace {

TermPtr random_open_term(std::mt19937_64& rng, StdLib& lib, int depth,
                         std::vector<std::string>& scope) {
  std::uint64_t r = rng() % 100;
  if (depth <= 0 || r < 30) {
    std::size_t pick = (std::size_t)(rng() % scope.size());
    return Term::variable(scope[pick]);
  }
  if (r < 50) {
    switch (rng() % 4) {
      case 0: return Term::constant("k", lib.k);
      case 1: return Term::constant("s", lib.s);
      case 2: return Term::constant("i", lib.i);
      default: return Term::constant("n", lib.numeral((std::size_t)(rng() % 4)));
    }
  }
  if (r < 88 || scope.size() >= 5) {
    TermPtr l = random_open_term(rng, lib, depth - 1, scope);
    TermPtr rr = random_open_term(rng, lib, depth - 1, scope);
    return Term::app(l, rr);
  }
  std::string v = "v" + std::to_string(scope.size());
  scope.push_back(v);
  TermPtr body = random_open_term(rng, lib, depth - 1, scope);
  scope.pop_back();
  return Term::lam(v, body);
}

}  // namespace

CriterionResult crit_abstraction_contract(std::uint64_t seed) {
  CriterionResult res;
  res.id = "abstraction-contract";

  k1::K1Model m;
  StdLib lib = build_stdlib(m, 100000);
  std::mt19937_64 rng(seed ^ 0xab5u);

  std::size_t undecided = 0;
  std::string failure;
  bool ok = true;
  for (int t = 0; t < 100 && ok; ++t) {
    std::vector<std::string> scope = {"x"};
    TermPtr body = eliminate_binders(random_open_term(rng, lib, 3, scope));
    TermPtr compiled = lambda_star("x", body);

    EvalOutcome fe = lib.eval(compiled);
    if (!fe.is_defined()) {
      ok = false;
      failure = "compiled abstraction must denote";
      break;
    }
    for (int j = 0; j < 10 && ok; ++j) {
      Element a = m.from_nat(Nat((unsigned long)(rng() % 1000)));
      EvalOutcome lhs = m.apply(fe.value(), a, lib.fuel);
      EvalOutcome rhs = lib.eval(substitute(body, "x", ce(a)));
      if (!outcomes_agree(lhs, rhs, &undecided)) {
        ok = false;
        failure = "application vs substitution disagree";
      }
    }
  }

  res.pass = ok;
  res.details["terms"] = 100;
  res.details["arguments_each"] = 10;
  res.details["undecided"] = undecided;
  if (!ok) res.details["failure"] = failure;
  return res;
}

CriterionResult crit_stdlib_identities() {
  CriterionResult res;
  res.id = "stdlib-identities";

  k1::K1Model m;
  StdLib lib = build_stdlib(m, 100000);

  std::vector<std::string> failures;
  auto expect = [&](const EvalOutcome& o, Element want, const std::string& what) {
    if (!o.is_defined() || o.value() != want) failures.push_back(what);
  };

  Element n0 = lib.numeral(0), n1 = lib.numeral(1), n2 = lib.numeral(2),
          n3 = lib.numeral(3);

  expect(lib.apply_chain({lib.ite, lib.tru, n2, n3}), n2, "if-true");
  expect(lib.apply_chain({lib.ite, lib.fls, n2, n3}), n3, "if-false");
  expect(lib.apply_chain({lib.bool_not, lib.tru}), lib.fls, "not-true");
  expect(lib.apply_chain({lib.bool_not, lib.fls}), lib.tru, "not-false");
  expect(lib.apply_chain({lib.bool_and, lib.tru, lib.tru}), lib.tru, "and-tt");
  expect(lib.apply_chain({lib.bool_and, lib.tru, lib.fls}), lib.fls, "and-tf");
  expect(lib.apply_chain({lib.bool_and, lib.fls, lib.tru}), lib.fls, "and-ft");
  expect(lib.apply_chain({lib.bool_and, lib.fls, lib.fls}), lib.fls, "and-ff");
  expect(lib.apply_chain({lib.zero_test, n0}), lib.tru, "zero-on-0");
  expect(lib.apply_chain({lib.zero_test, n1}), lib.fls, "zero-on-1");
  expect(lib.apply_chain({lib.zero_test, lib.numeral(4)}), lib.fls, "zero-on-4");
  expect(lib.apply_chain({lib.conv_c, lib.tru}), n1, "bool-to-numeral-true");
  expect(lib.apply_chain({lib.conv_c, lib.fls}), n0, "bool-to-numeral-false");
  expect(lib.apply_chain({lib.conv_d, n0}), lib.fls, "numeral-to-bool-0");
  expect(lib.apply_chain({lib.conv_d, n3}), lib.tru, "numeral-to-bool-3");
  expect(lib.apply_chain({lib.i, lib.k}), lib.k, "identity");

  // Tuples of every supported arity, with projections.
  for (std::size_t n = 1; n <= StdLib::kMaxTupleArity; ++n) {
    std::vector<Element> xs;
    for (std::size_t j = 0; j < n; ++j) xs.push_back(lib.numeral(j));
    Element tup = lib.tuple(xs);
    for (std::size_t j = 1; j <= n; ++j)
      expect(lib.apply_chain({tup, lib.proj[n][j]}), xs[j - 1],
             "tuple-" + std::to_string(n) + "-proj-" + std::to_string(j));
  }

  // Numerals are pairwise distinct elements.
  for (std::size_t a = 0; a <= 6; ++a)
    for (std::size_t b = a + 1; b <= 6; ++b)
      if (lib.numeral(a) == lib.numeral(b))
        failures.push_back("numerals " + std::to_string(a) + " and " +
                           std::to_string(b) + " collide");

  res.pass = failures.empty();
  res.details["failures"] = failures;
  return res;
}

CriterionResult crit_finite_search() {
  CriterionResult res;
  res.id = "finite-search";

  auto one = search_finite_pca(1);
  auto two = search_finite_pca(2);

  bool ok = two.empty() && one.size() == 1;
  if (ok) {
    const FiniteTable& t = one[0];
    ok = t.n == 1 && t.k == 0 && t.s == 0 && t.at(0, 0) &&
         *t.at(0, 0) == 0 && check_pas_axioms(t).ok;
    if (ok) {
      FiniteTable back = parse_table(serialize_table(t));
      ok = back.n == t.n && back.k == t.k && back.s == t.s &&
           back.cells == t.cells;
    }
    res.details["size_1_table"] = serialize_table(t);
  }
  res.details["size_1_count"] = one.size();
  res.details["size_2_count"] = two.size();
  res.pass = ok;
  return res;
}

CriterionResult crit_sequence_domains(std::uint64_t seed) {
  CriterionResult res;
  res.id = "sequence-domains";

  k2::K2Model m;
  auto [alpha, beta] = k2::make_counterexample_pair(m);
  std::mt19937_64 rng(seed ^ 0x52u);
  const Fuel fuel = 1000;

  const std::vector<std::vector<Nat>> periods = {
      {Nat(0)}, {Nat(1)}, {Nat(0), Nat(1)}, {Nat(1), Nat(1)}, {Nat(0), Nat(0)}};

  bool ok = true;
  std::string failure;
  for (int t = 0; t < 20 && ok; ++t) {
    std::vector<Nat> prefix;
    std::size_t len = (std::size_t)(rng() % 5);
    for (std::size_t j = 0; j < len; ++j) prefix.push_back(Nat((unsigned long)(rng() % 2)));
    const auto& period = periods[(std::size_t)(rng() % periods.size())];

    bool zero = true;
    for (const Nat& v : prefix) zero = zero && v == 0;
    for (const Nat& v : period) zero = zero && v == 0;

    Element x = m.periodic(prefix, period);
    auto bit_at = [&](std::size_t i) -> Nat {
      if (i < prefix.size()) return prefix[i];
      return period[(i - prefix.size()) % period.size()];
    };

    // A copy-or-reject operator: total exactly on the zero sequence.
    std::size_t probes = prefix.size() + 3;
    bool alpha_in = true;
    for (std::size_t i = 0; i < probes && alpha_in; ++i) {
      Outcome<Nat> o = m.coord(m.applied(alpha, x), Nat((unsigned long)i), fuel);
      if (!o.is_defined())
        alpha_in = false;
      else if (o.value() != bit_at(i)) {
        ok = false;
        failure = "copy operator altered a coordinate";
      }
    }
    if (ok && alpha_in != zero) {
      ok = false;
      failure = "copy operator domain mismatch";
    }

    // The complement operator: total exactly off the zero sequence.
    bool beta_in = true;
    for (std::size_t i = 0; i < probes && beta_in; ++i) {
      Outcome<Nat> o = m.coord(m.applied(beta, x), Nat((unsigned long)i), fuel);
      if (!o.is_defined())
        beta_in = false;
      else if (o.value() != 1) {
        ok = false;
        failure = "complement operator answered a value other than 1";
      }
    }
    if (ok && beta_in == zero) {
      ok = false;
      failure = "complement operator domain mismatch";
    }
  }
  res.details["samples"] = 20;

  // Every shipped decider rule gets refuted with a replayable flip witness.
  auto cands = k2::candidate_decider_rules(m);
  Json ws = Json::array();
  std::size_t witnessed = 0;
  for (const auto& [name, gamma] : cands) {
    Witness w = k2::refute_continuous_decider(m, gamma, m.all_zeros(),
                                              m.all_ones(), fuel);
    bool good = witness_ok(m, w);
    witnessed += good;
    Json wj;
    wj["candidate"] = name;
    wj["ok"] = good;
    wj["clause"] = w.clause;
    ws.push_back(std::move(wj));
  }
  ok = ok && witnessed == cands.size();
  res.details["decider_candidates"] = ws;
  if (!ok && !failure.empty()) res.details["failure"] = failure;
  res.pass = ok;
  return res;
}

CriterionResult crit_halting_machinery(std::uint64_t seed) {
  CriterionResult res;
  res.id = "halting-machinery";

  k1::K1Model m;
  StdLib lib = build_stdlib(m, 100000);
  std::mt19937_64 rng(seed ^ 0x6a17u);

  std::size_t undecided = 0;
  std::string failure;
  bool ok = true;

  Element eh = red::halting_ce_element(m, lib);
  for (int t = 0; t < 50 && ok; ++t) {
    Element a = m.from_nat(Nat((unsigned long)(rng() % 3000)));
    Element b = m.from_nat(Nat((unsigned long)(rng() % 3000)));
    EvalOutcome lhs = m.apply(eh, lib.pair2(a, b), lib.fuel);
    EvalOutcome rhs = m.apply(a, b, lib.fuel);
    if (!outcomes_agree(lhs, rhs, &undecided)) {
      ok = false;
      failure = "pair-application element disagrees with direct application";
    }
  }

  // Reduction of a one-point partial map into the pair-halting set.
  using k1::Prog;
  Element pe = m.from_nat(
      k1::encode(Prog::if_zero(Prog::input(), Prog::const_nat(Nat(0)),
                               Prog::diverge())));
  Element red_f = red::m_reduce_to_H(m, lib, pe);
  for (int t = 0; t < 50 && ok; ++t) {
    Element a = m.from_nat(Nat((unsigned long)(rng() % 40)));
    EvalOutcome direct = m.apply(pe, a, lib.fuel);
    EvalOutcome img = m.apply(red_f, a, lib.fuel);
    if (!img.is_defined()) {
      ok = false;
      failure = "reduction image must always be defined";
      break;
    }
    EvalOutcome through = m.apply(eh, img.value(), lib.fuel);
    if (!outcomes_agree(direct, through, &undecided)) {
      ok = false;
      failure = "membership does not transfer through the reduction";
    }
  }

  auto [f_kh, f_hk] = red::k_h_equivalence(m, lib);
  for (int t = 0; t < 50 && ok; ++t) {
    Element a = m.from_nat(Nat((unsigned long)(rng() % 3000)));
    Element b = m.from_nat(Nat((unsigned long)(rng() % 3000)));

    EvalOutcome self = m.apply(a, a, lib.fuel);
    EvalOutcome kh = m.apply(f_kh, a, lib.fuel);
    if (!kh.is_defined()) {
      ok = false;
      failure = "self-to-pair reduction must be total";
      break;
    }
    EvalOutcome via = m.apply(eh, kh.value(), lib.fuel);
    if (!outcomes_agree(self, via, &undecided)) {
      ok = false;
      failure = "self-halting does not transfer to pair-halting";
      break;
    }

    Element x = lib.pair2(a, b);
    EvalOutcome hk = m.apply(f_hk, x, lib.fuel);
    if (!hk.is_defined()) {
      ok = false;
      failure = "pair-to-self reduction must be total";
      break;
    }
    EvalOutcome yy = m.apply(hk.value(), hk.value(), lib.fuel);
    EvalOutcome ab = m.apply(a, b, lib.fuel);
    if (!outcomes_agree(ab, yy, &undecided)) {
      ok = false;
      failure = "pair-halting does not transfer to self-halting";
    }
  }

  Json ws = Json::array();
  std::size_t witnessed = 0;
  auto cands = red::candidate_halting_deciders(m, lib);
  for (const auto& [name, d] : cands) {
    Witness w = red::refute_halting_decider(m, lib, d, lib.fuel);
    bool good = witness_ok(m, w);
    witnessed += good;
    Json wj;
    wj["candidate"] = name;
    wj["ok"] = good;
    wj["clause"] = w.clause;
    ws.push_back(std::move(wj));
  }
  ok = ok && witnessed == cands.size();

  res.pass = ok;
  res.details["probes"] = 50;
  res.details["undecided"] = undecided;
  res.details["decider_candidates"] = ws;
  if (!ok && !failure.empty()) res.details["failure"] = failure;
  return res;
}

namespace {

struct ExpectedDialogue {
  bool valid = true;
  Element result{};
  std::vector<Element> queries;
  std::vector<Element> answers;
};

ExpectedDialogue interpret_plan(const oracle::DialoguePlan& plan,
                                const oracle::OracleFn& f, Element b) {
  ExpectedDialogue ed;
  std::vector<Element> answers;
  for (const auto& st : plan.steps) {
    Element val{};
    switch (st.source) {
      case oracle::PlanStep::Source::Input: val = b; break;
      case oracle::PlanStep::Source::Literal: val = st.literal; break;
      case oracle::PlanStep::Source::PriorAnswer:
        val = answers[st.answer_index];
        break;
    }
    if (st.action == oracle::PlanStep::Action::Answer) {
      ed.result = val;
      return ed;
    }
    ed.queries.push_back(val);
    Element a = f(val);
    ed.answers.push_back(a);
    answers.push_back(a);
  }
  ed.valid = false;
  return ed;
}

}  // namespace

CriterionResult crit_oracle_protocol(std::uint64_t seed) {
  CriterionResult res;
  res.id = "oracle-protocol";
  (void)seed;  // the dialogue corpus is fixed; nothing to sample

  k1::K1Model m;
  StdLib lib = build_stdlib(m, 1000000);

  using oracle::DialoguePlan;
  using oracle::PlanStep;
  auto ask_input = [] {
    PlanStep s;
    s.action = PlanStep::Action::Ask;
    s.source = PlanStep::Source::Input;
    return s;
  };
  auto ask_prior = [](std::size_t i) {
    PlanStep s;
    s.action = PlanStep::Action::Ask;
    s.source = PlanStep::Source::PriorAnswer;
    s.answer_index = i;
    return s;
  };
  auto ask_lit = [](Element e) {
    PlanStep s;
    s.action = PlanStep::Action::Ask;
    s.source = PlanStep::Source::Literal;
    s.literal = e;
    return s;
  };
  auto ans_input = [] {
    PlanStep s;
    s.action = PlanStep::Action::Answer;
    s.source = PlanStep::Source::Input;
    return s;
  };
  auto ans_prior = [](std::size_t i) {
    PlanStep s;
    s.action = PlanStep::Action::Answer;
    s.source = PlanStep::Source::PriorAnswer;
    s.answer_index = i;
    return s;
  };
  auto ans_lit = [](Element e) {
    PlanStep s;
    s.action = PlanStep::Action::Answer;
    s.source = PlanStep::Source::Literal;
    s.literal = e;
    return s;
  };

  std::vector<std::pair<std::string, DialoguePlan>> plans;
  plans.emplace_back("echo-input", DialoguePlan{{ans_input()}});
  plans.emplace_back("constant-seven", DialoguePlan{{ans_lit(lib.numeral(7))}});
  plans.emplace_back("representer", DialoguePlan{{ask_input(), ans_prior(0)}});
  plans.emplace_back("ask-then-echo", DialoguePlan{{ask_input(), ans_input()}});
  plans.emplace_back("probe-two", DialoguePlan{{ask_lit(lib.numeral(2)), ans_prior(0)}});
  plans.emplace_back("iterate-twice", DialoguePlan{{ask_input(), ask_prior(0), ans_prior(1)}});
  plans.emplace_back("first-of-two", DialoguePlan{{ask_input(), ask_prior(0), ans_prior(0)}});
  plans.emplace_back("two-probes", DialoguePlan{{ask_lit(lib.numeral(1)), ask_lit(lib.numeral(3)), ans_prior(1)}});
  plans.emplace_back("repeat-question", DialoguePlan{{ask_input(), ask_input(), ans_prior(1)}});
  plans.emplace_back("iterate-thrice", DialoguePlan{{ask_input(), ask_prior(0), ask_prior(1), ans_prior(2)}});

  std::vector<std::pair<std::string, oracle::OracleFn>> oracles;
  {
    oracle::OracleFn succ;
    for (std::size_t i = 0; i < 8; ++i)
      succ.entries.emplace_back(lib.numeral(i), lib.numeral(i + 1));
    succ.fallback = lib.numeral(0);
    oracles.emplace_back("successor-table", succ);

    oracle::OracleFn c5;
    c5.fallback = lib.numeral(5);
    oracles.emplace_back("constant-5", c5);

    oracle::OracleFn ind;
    ind.entries.emplace_back(lib.numeral(3), lib.numeral(1));
    ind.fallback = lib.numeral(0);
    oracles.emplace_back("indicator-of-3", ind);
  }

  bool ok = true;
  std::string failure;
  std::size_t dialogues = 0;

  for (const auto& [pname, plan] : plans) {
    Element mach = oracle::compile_plan(m, lib, plan);
    for (const auto& [oname, f] : oracles) {
      Element b = lib.numeral(2);
      ExpectedDialogue ed = interpret_plan(plan, f, b);
      auto [out, tr] = oracle::oracle_apply(m, lib, f, mach, b, lib.fuel);
      ++dialogues;

      auto fail = [&](const std::string& what) {
        ok = false;
        failure = pname + " against " + oname + ": " + what;
      };
      if (tr.status != oracle::DialogueStatus::Done) {
        fail("dialogue did not finish (" + oracle::status_name(tr.status) + ")");
        break;
      }
      if (!out.is_defined() || out.value() != ed.result) {
        fail("final answer mismatch");
        break;
      }
      if (tr.queries != ed.queries || tr.answers != ed.answers) {
        fail("query/answer sequence mismatch");
        break;
      }
      if (tr.rounds.size() != plan.steps.size()) {
        fail("round count mismatch");
        break;
      }
      std::optional<Element> nest;
      for (std::size_t r = 0; r < tr.rounds.size() && ok; ++r) {
        Element hist =
            r == 0 ? lib.pair2(lib.numeral(0), b)
                   : lib.pair2(lib.numeral(r), lib.pair2(b, *nest));
        if (tr.rounds[r].history != hist) fail("history shape mismatch");
        bool is_ans = plan.steps[r].action == PlanStep::Action::Answer;
        if (tr.rounds[r].is_answer != is_ans) fail("round flag mismatch");
        Element want_payload = is_ans ? ed.result : ed.queries[r];
        if (tr.rounds[r].payload != want_payload) fail("payload mismatch");
        if (!is_ans) nest = nest ? lib.pair2(*nest, ed.answers[r]) : ed.answers[r];
      }
      if (!ok) break;
    }
    if (!ok) break;
  }

  // The representer machine reproduces the oracle on every table point.
  if (ok) {
    Element r = oracle::compile_plan(m, lib, plans[2].second);
    for (const auto& [oname, f] : oracles) {
      for (const auto& [key, val] : f.entries) {
        auto [out, tr] = oracle::oracle_apply(m, lib, f, r, key, lib.fuel);
        if (!out.is_defined() || out.value() != val) {
          ok = false;
          failure = "representer misses a table point of " + oname;
          break;
        }
      }
      if (!ok) break;
    }
  }

  // The relative structure's k: two dialogues, no queries, projects correctly.
  if (ok) {
    oracle::OracleModel om(m, lib, oracles[0].second);
    Element kp = *om.combinator_k();
    std::array<std::pair<Element, Element>, 4> pairs = {
        std::make_pair(lib.numeral(4), lib.numeral(9)),
        std::make_pair(lib.k, lib.s),
        std::make_pair(lib.numeral(0), lib.k),
        std::make_pair(lib.tru, lib.numeral(6))};
    for (const auto& [a, b] : pairs) {
      EvalOutcome o1 = om.apply(kp, a, lib.fuel);
      if (!o1.is_defined()) {
        ok = false;
        failure = "relative k rejected its first argument";
        break;
      }
      EvalOutcome o2 = om.apply(o1.value(), b, lib.fuel);
      if (!o2.is_defined() || o2.value() != a) {
        ok = false;
        failure = "relative k failed the projection law";
        break;
      }
    }
  }

  res.pass = ok;
  res.details["dialogues"] = dialogues;
  res.details["machines"] = plans.size();
  res.details["oracles"] = oracles.size();
  if (!ok) res.details["failure"] = failure;
  return res;
}

CriterionResult crit_enumeration_run(std::uint64_t seed) {
  CriterionResult res;
  res.id = "enumeration-run";

  fb::Sim sim;
  sim.advance_to(10000);
  auto inv = sim.check_invariants();
  auto rep = sim.find_k(10000, 50, seed ^ 0xfbu);

  res.pass = inv.ok && rep.found && rep.samples.size() == 50;
  res.details["stages"] = 10000;
  res.details["invariants"] = json_invariants(inv);
  res.details["released"] = sim.released().size();
  res.details["active_followers"] = sim.followers().size();
  res.details["k"] = json_k_report(rep);
  return res;
}

CriterionResult crit_s_refutation(std::uint64_t seed) {
  CriterionResult res;
  res.id = "s-refutation";

  fb::Sim sim;
  fb::PsiModel pm(sim);
  const Fuel budget = 5000;
  sim.advance_to(budget);

  std::vector<std::pair<std::string, Nat>> cands;
  for (unsigned long v = 1; v <= 99; v += 2)
    cands.emplace_back("odd-" + std::to_string(v), Nat(v));
  cands.emplace_back("zero", Nat(0));
  auto krep = sim.find_k(budget, 3, seed ^ 0xfbu);
  if (krep.found)
    cands.emplace_back("extracted-k", Nat((unsigned long)krep.code));
  std::mt19937_64 rng(seed ^ 0x5eFu);
  for (int j = 0; j < 20; ++j) {
    unsigned long x = 2 * (1 + (unsigned long)(rng() % 600));
    cands.emplace_back("even-" + std::to_string(x), Nat(x));
  }

  std::size_t witnessed = 0, replayed = 0;
  Json first = Json::array();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    Witness w = fb::refute_s_candidate(sim, pm, cands[i].second, budget,
                                       seed + i);
    bool got = !w.transcript.empty();
    bool rep_ok = got && replay_witness(pm, w).ok;
    witnessed += got;
    replayed += rep_ok;
    if (first.size() < 4) {
      Json fj;
      fj["candidate"] = cands[i].first;
      fj["clause"] = w.clause;
      fj["replay_ok"] = rep_ok;
      first.push_back(std::move(fj));
    }
  }

  res.pass = krep.found && witnessed == cands.size() &&
             replayed == cands.size();
  res.details["candidates"] = cands.size();
  res.details["witnessed"] = witnessed;
  res.details["replayed"] = replayed;
  res.details["k_found"] = krep.found;
  res.details["examples"] = first;
  return res;
}

CriterionResult crit_separation_extension(std::uint64_t seed) {
  CriterionResult res;
  res.id = "separation-extension";
  (void)seed;  // candidate families are fixed

  k1::K1Model m;
  StdLib lib = build_stdlib(m, 100000);
  Element c01 = red::make_c01(m, lib);

  bool ok = true;
  Json secs;

  {
    Json ws = Json::array();
    for (const auto& [name, c] : red::candidate_separators(m, lib)) {
      Witness w = red::refute_separator(m, lib, c, lib.fuel);
      bool good = witness_ok(m, w);
      ok = ok && good;
      Json wj;
      wj["candidate"] = name;
      wj["ok"] = good;
      wj["clause"] = w.clause;
      ws.push_back(std::move(wj));
    }
    secs["separators"] = std::move(ws);
  }
  {
    Json ws = Json::array();
    for (const auto& [name, f] : red::candidate_total_extensions(m, lib)) {
      Witness w = red::refute_total_extension(m, lib, f, c01, lib.fuel);
      bool good = witness_ok(m, w);
      ok = ok && good;
      Json wj;
      wj["candidate"] = name;
      wj["ok"] = good;
      wj["clause"] = w.clause;
      ws.push_back(std::move(wj));
    }
    secs["extensions"] = std::move(ws);
  }
  {
    Element totalizer = m.from_nat(k1::precomplete_totalizer(
        m.nat_of(red::diagonal_element(m, lib))));
    Witness w = red::refute_precomplete_injective(m, lib, totalizer,
                                                  k1::identity_kernel(), c01,
                                                  lib.fuel);
    bool good = witness_ok(m, w);
    ok = ok && good;
    Json wj;
    wj["ok"] = good;
    wj["clause"] = w.clause;
    secs["precomplete"] = std::move(wj);
  }

  res.pass = ok;
  res.details = std::move(secs);
  return res;
}

CriterionResult crit_recursion_fixpoints(std::uint64_t seed) {
  CriterionResult res;
  res.id = "recursion-fixpoints";

  k1::K1Model m;
  StdLib lib = build_stdlib(m, 1000000);
  std::mt19937_64 rng(seed ^ 0x4ecu);

  std::vector<std::pair<std::string, Element>> fs;
  fs.emplace_back("drop-to-identity",
                  lib.eval_defined(Term::lam("g", Term::lam("y", Term::variable("y"))),
                                   "identity-shaped functional"));
  fs.emplace_back("constant-3",
                  lib.eval_defined(
                      Term::lam("g", Term::lam("y", ce(lib.numeral(3)))),
                      "constant functional"));
  fs.emplace_back("duplicate-argument",
                  lib.eval_defined(
                      Term::lam("g", Term::lam("y", Term::apps({ce(lib.pair_maker[2]),
                                                               Term::variable("y"),
                                                               Term::variable("y")}))),
                      "pairing functional"));
  fs.emplace_back("apply-back",
                  lib.eval_defined(
                      Term::lam("g", Term::lam("y", Term::app(Term::variable("y"),
                                                              Term::variable("g")))),
                      "argument-applies-fixpoint functional"));
  if (lib.diverger) {
    EvalOutcome kh = lib.apply_chain({lib.k, *lib.diverger});
    if (kh.is_defined()) fs.emplace_back("drop-to-divergence", kh.value());
  }

  bool ok = fs.size() == 5;
  std::string failure = ok ? "" : "functional family incomplete";
  std::size_t undecided = 0;

  for (const auto& [name, f] : fs) {
    if (!ok) break;
    EvalOutcome eo = fixpoint(m, lib, f, lib.fuel);
    if (!eo.is_defined()) {
      ok = false;
      failure = name + ": fixpoint element must denote";
      break;
    }
    Element e = eo.value();
    for (int j = 0; j < 20 && ok; ++j) {
      Element y = j < 10 ? lib.numeral((std::size_t)j)
                         : m.from_nat(Nat((unsigned long)(rng() % 2000)));
      EvalOutcome lhs = m.apply(e, y, lib.fuel);
      EvalOutcome rhs = lib.apply_chain({f, e, y});
      if (!outcomes_agree(lhs, rhs, &undecided)) {
        ok = false;
        failure = name + ": e y and f e y disagree";
      }
    }
  }

  res.pass = ok;
  res.details["functionals"] = fs.size();
  res.details["arguments_each"] = 20;
  res.details["undecided"] = undecided;
  if (!ok) res.details["failure"] = failure;
  return res;
}

std::vector<CriterionResult> run_all_criteria(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  out.push_back(crit_combinator_laws(seed));
  out.push_back(crit_abstraction_contract(seed));
  out.push_back(crit_stdlib_identities());
  out.push_back(crit_finite_search());
  out.push_back(crit_sequence_domains(seed));
  out.push_back(crit_halting_machinery(seed));
  out.push_back(crit_oracle_protocol(seed));
  out.push_back(crit_enumeration_run(seed));
  out.push_back(crit_s_refutation(seed));
  out.push_back(crit_separation_extension(seed));
  out.push_back(crit_recursion_fixpoints(seed));
  return out;
}

Json run_suite(std::uint64_t seed) {
  Json out;
  out["seed"] = seed;
  Json arr = Json::array();
  bool all = true;
  for (const CriterionResult& c : run_all_criteria(seed)) {
    Json j;
    j["id"] = c.id;
    j["pass"] = c.pass;
    j["details"] = c.details;
    arr.push_back(std::move(j));
    all = all && c.pass;
  }
  out["criteria"] = std::move(arr);
  out["all_pass"] = all;
  return out;
}

}  // namespace pca
