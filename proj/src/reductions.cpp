#include "pca/reductions.hpp"

#include "pca/errors.hpp"

namespace pca::red {

namespace {

TermPtr ce(Element e) { return Term::constant("_", e); }

TermPtr vx(const std::string& n) { return Term::variable(n); }

}  // namespace

Element halting_ce_element(Model& model, StdLib& lib) {
  (void)model;
  // e·⟨a,b⟩ = (⟨a,b⟩·fst)(⟨a,b⟩·snd) = a·b.
  TermPtr t = Term::lam(
      "x", Term::app(Term::app(vx("x"), ce(lib.proj[2][1])),
                     Term::app(vx("x"), ce(lib.proj[2][2]))));
  return lib.eval_defined(t, "pair-application element");
}

Element m_reduce_to_H(Model& model, StdLib& lib, Element e) {
  EvalOutcome o = model.apply(lib.pair_maker[2], e, lib.fuel);
  if (!o.is_defined())
    throw StdlibError("pair-partial application failed while building the "
                      "halting reduction");
  return o.value();  // f with f·a = ⟨e,a⟩
}

std::pair<Element, Element> k_h_equivalence(Model& model, StdLib& lib) {
  (void)model;
  Element f_kh = lib.eval_defined(
      Term::lam("a", Term::apps({ce(lib.pair_maker[2]), vx("a"), vx("a")})),
      "self-to-pair reduction");
  // f_HK·x = λ*z.(x·fst)(x·snd): a constant function whose own halting
  // matches the halting of the paired application inside x.
  Element f_hk = lib.eval_defined(
      Term::lam("x", Term::lam("z", Term::app(Term::app(vx("x"), ce(lib.proj[2][1])),
                                              Term::app(vx("x"), ce(lib.proj[2][2]))))),
      "pair-to-self reduction");
  return {f_kh, f_hk};
}

Element diagonal_element(Model& model, StdLib& lib) {
  (void)model;
  return lib.eval_defined(Term::lam("a", Term::app(vx("a"), vx("a"))),
                          "self-application element");
}

Witness refute_halting_decider(Model& model, StdLib& lib, Element f,
                               Fuel fuel) {
  if (!lib.diverger)
    throw PcaError("model '" + model.name() +
                   "' has no divergence certificate; the halting refuter "
                   "cannot build its divergent branch");

  Element k0 = lib.eval_defined(
      Term::app(ce(lib.k), ce(lib.numeral(0))), "constant-0 branch");
  // g·a: ask f about ⟨a,a⟩, then run the constant-0 element (verdict false)
  // or the diverger (verdict true). Branches are plain elements, so the
  // strict evaluator only commits after the verdict is in.
  TermPtr gt = Term::lam(
      "a",
      Term::app(Term::apps({ce(lib.ite),
                            Term::app(ce(lib.bool_not),
                                      Term::app(ce(f), Term::apps({ce(lib.pair_maker[2]),
                                                                   vx("a"), vx("a")}))),
                            ce(k0), ce(*lib.diverger)}),
                vx("a")));
  Element g = lib.eval_defined(gt, "halting diagonal element");

  Witness w;
  w.kind = "halting-decider";
  w.offenders = {f, g};

  Element gg = lib.pair2(g, g);
  AppRecord r1 = record_apply(model, f, gg, fuel, "decider consulted on the diagonal pair");
  w.transcript.push_back(r1);

  if (r1.kind != OutcomeKind::Defined) {
    w.clause = "invalid candidate: no verdict on the diagonal pair within fuel";
    return w;
  }
  if (*r1.value == lib.tru) {
    AppRecord r2 = record_apply(model, g, g, fuel, "running the diagonal on itself");
    w.transcript.push_back(r2);
    if (r2.kind == OutcomeKind::ProvenDivergent)
      w.clause = "candidate asserts the diagonal pair halts, but g applied to "
                 "itself provably diverges";
    else if (r2.kind == OutcomeKind::Defined)
      w.clause = "inconsistent run: the diagonal halted although its verdict "
                 "branch was the diverger";
    else
      w.clause = "candidate asserts the diagonal pair halts; the diagonal gave "
                 "no verdict within fuel (inconclusive)";
    return w;
  }
  if (*r1.value == lib.fls) {
    AppRecord r2 = record_apply(model, g, g, fuel, "running the diagonal on itself");
    w.transcript.push_back(r2);
    if (r2.kind == OutcomeKind::Defined && r2.value == lib.numeral(0))
      w.clause = "candidate asserts the diagonal pair diverges, but g applied "
                 "to itself halts with value 0";
    else
      w.clause = "candidate asserts the diagonal pair diverges; the diagonal "
                 "failed to halt with 0 as constructed (inconclusive)";
    return w;
  }
  w.clause = "invalid candidate: verdict on the diagonal pair is neither true "
             "nor false";
  return w;
}

Witness refute_separator(Model& model, StdLib& lib, Element c, Fuel fuel) {
  Witness w;
  w.kind = "separator";
  w.offenders = {c};

  AppRecord r = record_apply(model, c, c, fuel, "separator applied to its own element");
  w.transcript.push_back(r);

  if (r.kind != OutcomeKind::Defined) {
    w.clause = "invalid candidate: no verdict on its own element within fuel";
    return w;
  }
  if (*r.value == lib.numeral(1)) {
    w.clause = "c·c = 1: by that very equation c lies in the right-hand class, "
               "which the separating set must exclude, yet the verdict 1 "
               "asserts membership";
    return w;
  }
  if (*r.value == lib.numeral(0)) {
    w.clause = "c·c = 0: by that very equation c lies in the left-hand core, "
               "which the separating set must contain, yet the verdict 0 "
               "asserts non-membership";
    return w;
  }
  w.clause = "invalid candidate: verdict on its own element is neither 0 nor 1";
  return w;
}

Witness refute_total_extension(Model& model, StdLib& lib, Element f,
                               Element c01, Fuel fuel) {
  Witness w;
  w.kind = "total-extension";
  w.offenders = {f};

  // Direct probes with self-application values that are already numerals;
  // comparison is only trusted when both sides are canonical numerals.
  Element k1e = lib.eval_defined(Term::app(ce(lib.k), ce(lib.numeral(1))),
                                 "constant-1 probe");
  Element k0e = lib.eval_defined(Term::app(ce(lib.k), ce(lib.numeral(0))),
                                 "constant-0 probe");
  for (Element a : {k1e, k0e, lib.i}) {
    AppRecord rf = record_apply(model, f, a, fuel, "extension probed");
    AppRecord ra = record_apply(model, a, a, fuel, "probe applied to itself");
    if (rf.kind != OutcomeKind::Defined) {
      w.transcript.push_back(rf);
      w.offenders.push_back(a);
      w.clause = "candidate is not total: f gave no value at a probe element";
      return w;
    }
    auto nf = lib.numeral_index(*rf.value);
    std::optional<std::size_t> na;
    if (ra.kind == OutcomeKind::Defined && ra.value)
      na = lib.numeral_index(*ra.value);
    if (nf && na && *nf != *na) {
      w.transcript.push_back(rf);
      w.transcript.push_back(ra);
      w.offenders.push_back(a);
      w.clause = "extension violated at a direct probe: the probe applied to "
                 "itself is defined, but f disagrees with it";
      return w;
    }
  }

  // Diagonal: g·a = flip(tag(f·a)) is total whenever f and the tag are, and
  // g·g is then a defined value f must match — which it provably cannot.
  Element fhat = lib.eval_defined(
      Term::lam("a", Term::app(ce(c01), Term::app(ce(f), vx("a")))),
      "tagged extension");
  Element flip = lib.eval_defined(
      Term::lam("v", Term::app(ce(lib.conv_c),
                               Term::app(ce(lib.bool_not),
                                         Term::app(ce(lib.conv_d), vx("v"))))),
      "numeral flip");
  Element g = lib.eval_defined(
      Term::lam("a", Term::app(ce(flip), Term::app(ce(fhat), vx("a")))),
      "extension diagonal element");
  w.offenders.push_back(g);

  AppRecord rfg = record_apply(model, f, g, fuel, "f on the diagonal element");
  w.transcript.push_back(rfg);
  if (rfg.kind != OutcomeKind::Defined) {
    w.clause = "candidate is not total: f gave no value at the diagonal "
               "element within fuel";
    return w;
  }
  AppRecord rgg = record_apply(model, g, g, fuel, "diagonal applied to itself");
  w.transcript.push_back(rgg);
  if (rgg.kind != OutcomeKind::Defined) {
    AppRecord rtag =
        record_apply(model, c01, *rfg.value, fuel, "tag on f's value");
    w.transcript.push_back(rtag);
    w.clause = "invalid candidate: the tag element failed to produce a value "
               "on f's output, so the diagonal is stuck";
    return w;
  }
  if (*rfg.value != *rgg.value) {
    w.clause = "extension violated at the diagonal: g·g is defined yet f·g "
               "differs from it";
    return w;
  }
  AppRecord rtag = record_apply(model, c01, *rfg.value, fuel, "tag on the common value");
  w.transcript.push_back(rtag);
  w.clause = "impossible fixed point: g·g equals f·g although g flips the "
             "tagged value of f·g; the tag element is inconsistent";
  return w;
}

Element extension_transfer(Model& model, StdLib& lib, Element f) {
  auto [f_kh, f_hk] = k_h_equivalence(model, lib);
  (void)f_kh;
  return lib.eval_defined(
      Term::lam("x", Term::app(ce(f), Term::app(ce(f_hk), vx("x")))),
      "transferred extension");
}

Witness refute_precomplete_injective(Model& model, StdLib& lib,
                                     Element totalizer,
                                     const k1::NumberingKernel& kernel,
                                     Element c01, Fuel fuel) {
  if (!kernel.is_identity)
    throw PcaError("the injective-numbering refuter applies only to an "
                   "identity kernel; got kernel '" + kernel.label + "'");
  Witness w = refute_total_extension(model, lib, totalizer, c01, fuel);
  w.kind = "precomplete-1-1";
  w.clause = "under an injective numbering, totalization up to the kernel is "
             "literal extension; " + w.clause;
  return w;
}

Element make_c01(k1::K1Model& m, StdLib& lib) {
  Nat n1 = m.nat_of(lib.numeral(1));
  Nat n0 = m.nat_of(lib.numeral(0));
  k1::ProgPtr p = k1::Prog::if_zero(
      k1::Prog::eq(k1::Prog::input(), k1::Prog::const_nat(n1)),
      k1::Prog::const_nat(n1), k1::Prog::const_nat(n0));
  return m.from_nat(k1::encode(p));
}

std::vector<std::pair<std::string, Element>> candidate_halting_deciders(
    k1::K1Model& m, StdLib& lib) {
  using namespace k1;
  Nat tru = m.nat_of(lib.tru), fls = m.nat_of(lib.fls);
  Nat n0 = m.nat_of(lib.numeral(0));

  auto table = [&](ProgPtr cond) {
    return m.from_nat(encode(Prog::if_zero(std::move(cond), Prog::const_nat(tru),
                                           Prog::const_nat(fls))));
  };

  std::vector<std::pair<std::string, Element>> out;
  out.emplace_back("always-yes",
                   lib.eval_defined(Term::app(ce(lib.k), ce(lib.tru)),
                                    "constant-true decider"));
  out.emplace_back("always-no",
                   lib.eval_defined(Term::app(ce(lib.k), ce(lib.fls)),
                                    "constant-false decider"));
  out.emplace_back("first-component-is-k",
                   table(Prog::eq(Prog::fst(Prog::input()), Prog::const_nat(k_code()))));
  out.emplace_back("second-component-is-numeral-0",
                   table(Prog::eq(Prog::snd(Prog::input()), Prog::const_nat(n0))));
  out.emplace_back("components-equal", table(Prog::eq(Prog::fst(Prog::input()), Prog::snd(Prog::input()))));
  return out;
}

std::vector<std::pair<std::string, Element>> candidate_separators(
    k1::K1Model& m, StdLib& lib) {
  using namespace k1;
  Nat n1 = m.nat_of(lib.numeral(1)), n0 = m.nat_of(lib.numeral(0));

  std::vector<std::pair<std::string, Element>> out;
  out.emplace_back("always-in",
                   lib.eval_defined(Term::app(ce(lib.k), ce(lib.numeral(1))),
                                    "constant-1 separator"));
  out.emplace_back("always-out",
                   lib.eval_defined(Term::app(ce(lib.k), ce(lib.numeral(0))),
                                    "constant-0 separator"));
  out.emplace_back("tag-is-one", make_c01(m, lib));
  out.emplace_back("identity", lib.i);
  out.emplace_back("code-is-numeral-0",
                   m.from_nat(encode(Prog::if_zero(
                       Prog::eq(Prog::input(), Prog::const_nat(n0)),
                       Prog::const_nat(n1), Prog::const_nat(n0)))));
  return out;
}

std::vector<std::pair<std::string, Element>> candidate_total_extensions(
    k1::K1Model& m, StdLib& lib) {
  std::vector<std::pair<std::string, Element>> out;
  out.emplace_back("identity", lib.i);
  out.emplace_back("constant-0",
                   lib.eval_defined(Term::app(ce(lib.k), ce(lib.numeral(0))),
                                    "constant-0 extension"));
  out.emplace_back("constant-1",
                   lib.eval_defined(Term::app(ce(lib.k), ce(lib.numeral(1))),
                                    "constant-1 extension"));
  if (lib.diverger) out.emplace_back("stuck-everywhere", *lib.diverger);
  out.emplace_back("self-application", diagonal_element(*lib.model, lib));
  out.emplace_back("smn-totalizer",
                   m.from_nat(k1::precomplete_totalizer(
                       m.nat_of(diagonal_element(*lib.model, lib)))));
  return out;
}

}  // namespace pca::red
