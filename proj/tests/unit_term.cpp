#include <random>

#include "doctest.h"
#include "pca/k1.hpp"
#include "pca/kernel.hpp"
#include "pca/term.hpp"

using namespace pca;

TEST_CASE("parse and print are mutually inverse") {
  const char* samples[] = {
      "(const k)",
      "(var x)",
      "(app (const k) (var x))",
      "(lam x (var x))",
      "(lam x (app (app (const s) (var x)) (const k)))",
      "(app (lam y (var y)) (const i))",
  };
  for (const char* s : samples) {
    TermPtr t = parse_term(s);
    CHECK(print_term(t) == s);
    CHECK(print_term(parse_term(print_term(t))) == s);
  }
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_term("(app (const k))"), TermError);
  CHECK_THROWS_AS(parse_term("(("), TermError);
  CHECK_THROWS_AS(parse_term(""), TermError);
  CHECK_THROWS_AS(parse_term("(lam x)"), TermError);
  CHECK_THROWS_AS(parse_term("(app (const k) (const s)) trailing"), TermError);
}

TEST_CASE("abstraction compiles to the expected canonical forms") {
  // λx.x is the identity atom.
  CHECK(print_term(lambda_star("x", parse_term("(var x)"))) == "(const i)");
  // λx.y parks the unrelated atom under k.
  CHECK(print_term(lambda_star("x", parse_term("(var y)"))) ==
        "(app (const k) (var y))");
  // λx.(λy.y)x — inner binder must be eliminated first; the whole thing
  // becomes s (k i) i.
  TermPtr t = eliminate_binders(parse_term("(lam x (app (lam y (var y)) (var x)))"));
  CHECK(print_term(t) ==
        "(app (app (const s) (app (const k) (const i))) (const i))");
}

TEST_CASE("free variables") {
  CHECK(free_vars(parse_term("(lam x (var x))")).empty());
  auto fv = free_vars(parse_term("(app (var a) (lam x (app (var x) (var b))))"));
  CHECK(fv == std::set<std::string>{"a", "b"});
  CHECK(free_vars(lambda_star("x", parse_term("(app (var x) (var y))"))) ==
        std::set<std::string>{"y"});
}

TEST_CASE("substitution replaces exactly the free occurrences") {
  TermPtr t = parse_term("(app (var x) (lam x (var x)))");
  TermPtr r = substitute(t, "x", parse_term("(const k)"));
  CHECK(print_term(r) == "(app (const k) (lam x (var x)))");
}

namespace {

// Independent model of substitution-then-evaluate used to cross-check the
// compiled abstraction: a tiny environment-based evaluator.
EvalOutcome env_eval(Model& m, StdLib& lib, const TermPtr& t, Element x_val,
                     Fuel fuel) {
  TermPtr closed = substitute(t, "x", Term::constant("_", x_val));
  return lib.eval(closed);
}

}  // namespace

TEST_CASE("compiled abstractions apply like substitution") {
  k1::K1Model m;
  StdLib lib = build_stdlib(m, 100000);
  std::mt19937_64 rng(99);

  const char* bodies[] = {
      "(var x)",
      "(app (var x) (var x))",
      "(app (const k) (var x))",
      "(app (app (const s) (const k)) (var x))",
      "(app (var x) (const k))",
  };
  for (const char* b : bodies) {
    TermPtr body = parse_term(b);
    TermPtr fn = lambda_star("x", body);
    EvalOutcome fe = lib.eval(fn);
    REQUIRE(fe.is_defined());  // abstractions always denote
    for (int j = 0; j < 10; ++j) {
      Element a = m.from_nat(Nat((unsigned long)(rng() % 500)));
      EvalOutcome lhs = m.apply(fe.value(), a, 100000);
      EvalOutcome rhs = env_eval(m, lib, body, a, 100000);
      REQUIRE(lhs.kind() == rhs.kind());
      if (lhs.is_defined()) CHECK(lhs.value() == rhs.value());
    }
  }
}

TEST_CASE("eval counts model applications and respects per-call budgets") {
  k1::K1Model m;
  StdLib lib = build_stdlib(m, 100000);
  EvalStats st;
  TermPtr t = Term::apps({Term::constant("_", lib.k),
                          Term::constant("_", lib.i),
                          Term::constant("_", lib.s)});
  EvalOutcome o = eval_closed(m, t, 100000, nullptr, &st);
  REQUIRE(o.is_defined());
  CHECK(o.value() == lib.i);
  CHECK(st.apply_calls == 2);
}

TEST_CASE("apps folds to the left and rejects empty chains") {
  TermPtr a = Term::variable("a"), b = Term::variable("b"), c = Term::variable("c");
  CHECK(print_term(Term::apps({a, b, c})) ==
        "(app (app (var a) (var b)) (var c))");
  CHECK_THROWS_AS(Term::apps(std::vector<TermPtr>{}), TermError);
}
