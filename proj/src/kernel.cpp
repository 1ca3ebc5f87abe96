#include "pca/kernel.hpp"

#include <sstream>

namespace pca {

namespace {

std::string describe(const Model& m, const EvalOutcome& o) {
  std::ostringstream os;
  os << kind_name(o.kind());
  if (o.is_defined()) os << " " << m.show(o.value());
  os << " (spent " << o.spent() << ")";
  return os.str();
}

}  // namespace

TermPtr StdLib::ce(Element e, const std::string& label) const {
  return Term::constant(label, e);
}

EvalOutcome StdLib::eval(const TermPtr& t) {
  // λ*-elimination leaves k/s/i atoms behind; resolve them here.
  ConstResolver r = [this](const std::string& name) -> std::optional<Element> {
    if (name == "k") return k;
    if (name == "s") return s;
    if (name == "i") return i;
    return std::nullopt;
  };
  return eval_closed(*model, t, fuel, r);
}

Element StdLib::eval_defined(const TermPtr& t, const std::string& what) {
  EvalOutcome o = eval(t);
  if (!o.is_defined())
    throw StdlibError("building " + what + " failed: " + describe(*model, o));
  return o.value();
}

EvalOutcome StdLib::apply_chain(std::initializer_list<Element> es) {
  auto it = es.begin();
  if (it == es.end()) throw StdlibError("empty application chain");
  Element acc = *it++;
  Fuel spent = 0;
  for (; it != es.end(); ++it) {
    EvalOutcome o = model->apply(acc, *it, fuel);
    spent += o.spent();
    if (!o.is_defined()) return o.kind() == OutcomeKind::ProvenDivergent
                                    ? EvalOutcome::diverged(spent)
                                    : EvalOutcome::exhausted(spent);
    acc = o.value();
  }
  return EvalOutcome::defined(acc, spent);
}

Element StdLib::numeral(std::size_t n) {
  while (numerals_.size() <= n) {
    if (numerals_.empty()) {
      numerals_.push_back(i);  // numeral 0
      continue;
    }
    Element prev = numerals_.back();
    EvalOutcome o = apply_chain({pair_maker[2], fls, prev});
    if (!o.is_defined())
      throw StdlibError("numeral " + std::to_string(numerals_.size()) +
                        " failed: " + describe(*model, o));
    numerals_.push_back(o.value());
  }
  return numerals_[n];
}

std::optional<std::size_t> StdLib::numeral_index(Element e) const {
  for (std::size_t n = 0; n < numerals_.size(); ++n)
    if (numerals_[n] == e) return n;
  return std::nullopt;
}

Element StdLib::pair2(Element a, Element b) {
  EvalOutcome o = apply_chain({pair_maker[2], a, b});
  if (!o.is_defined())
    throw StdlibError("pairing failed: " + describe(*model, o));
  return o.value();
}

Element StdLib::tuple(const std::vector<Element>& xs) {
  if (xs.empty() || xs.size() > kMaxTupleArity)
    throw StdlibError("tuple arity must be 1.." + std::to_string(kMaxTupleArity));
  std::vector<Element> chain;
  chain.push_back(pair_maker[xs.size()]);
  for (Element x : xs) chain.push_back(x);
  Element acc = chain[0];
  for (std::size_t j = 1; j < chain.size(); ++j) {
    EvalOutcome o = model->apply(acc, chain[j], fuel);
    if (!o.is_defined())
      throw StdlibError("tuple build failed: " + describe(*model, o));
    acc = o.value();
  }
  return acc;
}

StdLib build_stdlib(Model& model, Fuel fuel) {
  StdLib lib;
  lib.model = &model;
  lib.fuel = fuel;

  auto ok = model.combinator_k();
  auto os = model.combinator_s();
  if (!ok || !os)
    throw StdlibError("model '" + model.name() +
                      "' exposes no k/s combinators; it is at most a pas and "
                      "the derived vocabulary is unavailable");
  lib.k = *ok;
  lib.s = *os;

  auto ce = [&](Element e) { return Term::constant("_", e); };

  // i = s·k·k, then the smoke laws: k a b = a and s k k x = x.
  lib.i = lib.eval_defined(Term::apps({ce(lib.s), ce(lib.k), ce(lib.k)}),
                           "i = s k k");
  {
    EvalOutcome o1 = lib.apply_chain({lib.k, lib.s, lib.k});
    if (!o1.is_defined() || o1.value() != lib.s)
      throw StdlibError("k-law smoke test failed: k s k != s");
    EvalOutcome o2 = lib.apply_chain({lib.i, lib.k});
    if (!o2.is_defined() || o2.value() != lib.k)
      throw StdlibError("s-law smoke test failed: (s k k) k != k");
  }

  lib.tru = lib.k;
  lib.fls = lib.eval_defined(Term::app(ce(lib.k), ce(lib.i)), "false = k i");
  lib.ite = lib.i;

  // Pairing and projections for arities 1..4:
  //   pair_maker[n] = λ*x1…xn.λ*z. z x1 … xn   and   proj[n][j] = λ*x1…xn. xj.
  for (std::size_t n = 1; n <= StdLib::kMaxTupleArity; ++n) {
    std::vector<std::string> xs;
    for (std::size_t j = 1; j <= n; ++j) xs.push_back("x" + std::to_string(j));

    std::vector<TermPtr> zapp;
    zapp.push_back(Term::variable("z"));
    for (const auto& x : xs) zapp.push_back(Term::variable(x));
    TermPtr body = Term::lam("z", Term::apps(std::move(zapp)));
    for (std::size_t j = n; j >= 1; --j) body = Term::lam(xs[j - 1], body);
    lib.pair_maker[n] =
        lib.eval_defined(body, "pair maker of arity " + std::to_string(n));

    for (std::size_t j = 1; j <= n; ++j) {
      TermPtr pj = Term::variable(xs[j - 1]);
      for (std::size_t m = n; m >= 1; --m) pj = Term::lam(xs[m - 1], pj);
      lib.proj[n][j] = lib.eval_defined(
          pj, "projection " + std::to_string(j) + "/" + std::to_string(n));
    }
  }
  {
    // ⟨a,b⟩·proj = component, exercised once with (s, k).
    Element p = lib.pair2(lib.s, lib.k);
    EvalOutcome o1 = lib.apply_chain({p, lib.proj[2][1]});
    EvalOutcome o2 = lib.apply_chain({p, lib.proj[2][2]});
    if (!o1.is_defined() || o1.value() != lib.s || !o2.is_defined() ||
        o2.value() != lib.k)
      throw StdlibError("pair projection smoke test failed");
  }

  lib.bool_not = lib.eval_defined(
      Term::lam("a", Term::apps({ce(lib.ite), Term::variable("a"), ce(lib.fls),
                                 ce(lib.tru)})),
      "not");
  lib.bool_and = lib.eval_defined(
      Term::lam(
          "a",
          Term::lam("b", Term::apps({ce(lib.ite), Term::variable("a"),
                                     Term::apps({ce(lib.ite), Term::variable("b"),
                                                 ce(lib.tru), ce(lib.fls)}),
                                     ce(lib.fls)}))),
      "and");
  lib.zero_test = lib.eval_defined(
      Term::lam("x", Term::app(Term::variable("x"), ce(lib.tru))), "zero?");

  lib.numeral(1);  // materialize 0 and 1 for the converters
  lib.conv_c = lib.eval_defined(
      Term::lam("z", Term::apps({ce(lib.ite), Term::variable("z"),
                                 ce(lib.numeral(1)), ce(lib.numeral(0))})),
      "c (boolean to numeral)");
  lib.conv_d = lib.eval_defined(
      Term::lam("x", Term::app(ce(lib.bool_not),
                               Term::app(ce(lib.zero_test), Term::variable("x")))),
      "d (numeral to boolean)");

  if (auto dp = model.divergent_pair()) {
    // h = s·(k f)·(k g): h·a reduces to f·g, the model's divergent pair.
    Element h = lib.eval_defined(
        Term::apps({ce(lib.s), Term::app(ce(lib.k), ce(dp->first)),
                    Term::app(ce(lib.k), ce(dp->second))}),
        "diverger");
    EvalOutcome probe = model.apply(h, lib.k, fuel);
    if (probe.kind() != OutcomeKind::ProvenDivergent)
      throw StdlibError("diverger smoke test failed: h k gave " +
                        describe(model, probe));
    lib.diverger = h;
  }

  return lib;
}

EvalOutcome fixpoint(Model& model, StdLib& lib, Element f, Fuel fuel) {
  TermPtr wt = Term::lam(
      "x", Term::lam("y", Term::app(Term::app(lib.ce(f, "f"),
                                              Term::app(Term::variable("x"),
                                                        Term::variable("x"))),
                                    Term::variable("y"))));
  EvalOutcome w = lib.eval(wt);
  if (!w.is_defined()) return w;
  EvalOutcome e = model.apply(w.value(), w.value(), fuel);
  return e.map([](Element v) { return v; });
}

ObsVerdict observational_eq(Model& model, Element a, Element b,
                            const std::vector<Element>& probes, Fuel fuel) {
  for (Element p : probes) {
    EvalOutcome oa = model.apply(a, p, fuel);
    EvalOutcome ob = model.apply(b, p, fuel);
    bool da = oa.is_defined(), db = ob.is_defined();
    bool pa = oa.kind() == OutcomeKind::ProvenDivergent;
    bool pb = ob.kind() == OutcomeKind::ProvenDivergent;
    if ((da && db && oa.value() != ob.value()) || (da && pb) || (pa && db)) {
      ObsVerdict v;
      v.distinguished = true;
      v.probe = p;
      v.detail = "distinguished at probe " + model.show(p) + ": " +
                 describe(model, oa) + " vs " + describe(model, ob);
      return v;
    }
  }
  ObsVerdict v;
  v.detail = "agree-on-probes";
  return v;
}

}  // namespace pca
