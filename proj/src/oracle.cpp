#include "pca/oracle.hpp"

#include "pca/errors.hpp"

namespace pca::oracle {

namespace {

TermPtr ce(Element e) { return Term::constant("_", e); }

}  // namespace

std::string status_name(DialogueStatus s) {
  switch (s) {
    case DialogueStatus::Done: return "done";
    case DialogueStatus::FuelExhausted: return "fuel-exhausted";
    case DialogueStatus::Diverged: return "diverged";
    case DialogueStatus::InvalidReply: return "invalid-reply";
    case DialogueStatus::RoundLimit: return "round-limit";
  }
  return "?";
}

std::pair<EvalOutcome, DialogueTranscript> oracle_apply(
    Model& model, StdLib& lib, const OracleFn& f, Element a, Element b,
    Fuel fuel, std::size_t max_rounds) {
  DialogueTranscript tr;
  Fuel total = 0;
  std::optional<Element> nest;  // nested pair of answers so far

  auto finish = [&](DialogueStatus st, EvalOutcome o) {
    tr.status = st;
    tr.fuel_spent = total;
    return std::make_pair(o, tr);
  };

  for (std::size_t r = 0; r < max_rounds; ++r) {
    Element hist;
    if (r == 0) {
      hist = lib.pair2(lib.numeral(0), b);
    } else {
      Element payload = lib.pair2(b, *nest);
      hist = lib.pair2(lib.numeral(r), payload);
    }

    EvalOutcome o = model.apply(a, hist, fuel);
    total += o.spent();
    RoundRecord rec;
    rec.history = hist;
    if (o.kind() == OutcomeKind::ProvenDivergent)
      return finish(DialogueStatus::Diverged, EvalOutcome::diverged(total));
    if (o.kind() == OutcomeKind::FuelExhausted)
      return finish(DialogueStatus::FuelExhausted, EvalOutcome::exhausted(total));
    rec.reply = o.value();

    EvalOutcome of = model.apply(rec.reply, lib.proj[2][1], fuel);
    total += of.spent();
    EvalOutcome op = model.apply(rec.reply, lib.proj[2][2], fuel);
    total += op.spent();
    if (!of.is_defined() || !op.is_defined()) {
      bool fe = of.kind() == OutcomeKind::FuelExhausted ||
                op.kind() == OutcomeKind::FuelExhausted;
      tr.rounds.push_back(rec);
      // A reply that provably is not a pair can never complete the protocol.
      return finish(fe ? DialogueStatus::FuelExhausted : DialogueStatus::InvalidReply,
                    fe ? EvalOutcome::exhausted(total) : EvalOutcome::diverged(total));
    }
    Element flag = of.value();
    rec.payload = op.value();

    if (flag == lib.tru) {
      rec.is_answer = true;
      tr.rounds.push_back(rec);
      tr.result = rec.payload;
      return finish(DialogueStatus::Done,
                    EvalOutcome::defined(rec.payload, total));
    }
    if (flag != lib.fls) {
      tr.rounds.push_back(rec);
      return finish(DialogueStatus::InvalidReply, EvalOutcome::diverged(total));
    }
    rec.is_answer = false;
    tr.rounds.push_back(rec);
    Element ans = f(rec.payload);
    tr.queries.push_back(rec.payload);
    tr.answers.push_back(ans);
    nest = nest ? lib.pair2(*nest, ans) : ans;
  }
  return finish(DialogueStatus::RoundLimit, EvalOutcome::exhausted(total));
}

Element compile_plan(Model& model, StdLib& lib, const DialoguePlan& plan) {
  (void)model;
  const auto& steps = plan.steps;
  if (steps.empty()) throw PlanError("plan has no steps");
  if (steps.size() > kMaxRounds)
    throw PlanError("plan exceeds " + std::to_string(kMaxRounds) + " rounds");
  for (std::size_t r = 0; r < steps.size(); ++r) {
    bool last = r + 1 == steps.size();
    if (last && steps[r].action != PlanStep::Action::Answer)
      throw PlanError("final step must answer");
    if (!last && steps[r].action != PlanStep::Action::Ask)
      throw PlanError("only the final step may answer");
    if (steps[r].source == PlanStep::Source::PriorAnswer) {
      if (r == 0) throw PlanError("round 0 has no prior answers");
      if (steps[r].answer_index >= r)
        throw PlanError("prior-answer index out of range");
    }
  }

  Element u21 = lib.proj[2][1], u22 = lib.proj[2][2];
  TermPtr h = Term::variable("h");

  // Safe decrement that parks at 0, keeping stray branch values numerals.
  Element dec = lib.eval_defined(
      Term::lam("m", Term::apps({ce(lib.ite),
                                 Term::app(ce(lib.zero_test), Term::variable("m")),
                                 ce(lib.numeral(0)),
                                 Term::app(Term::variable("m"), ce(u22))})),
      "guarded decrement");

  auto source_term = [&](std::size_t round, const PlanStep& st) -> TermPtr {
    TermPtr payload = Term::app(h, ce(u22));  // b, or ⟨b, answers⟩
    switch (st.source) {
      case PlanStep::Source::Input:
        return round == 0 ? payload : Term::app(payload, ce(u21));
      case PlanStep::Source::Literal:
        return ce(st.literal);
      case PlanStep::Source::PriorAnswer: {
        TermPtr n = Term::app(payload, ce(u22));  // answer nest at this round
        for (std::size_t d = 0; d + 1 + st.answer_index < round; ++d)
          n = Term::app(n, ce(u21));
        if (st.answer_index > 0) n = Term::app(n, ce(u22));
        return n;
      }
    }
    throw PlanError("unreachable source kind");
  };

  // Each round's reply sits behind a dummy binder so that only the branch
  // selected by the header is ever evaluated (the history payload has a
  // different shape at every round).
  std::vector<TermPtr> thunks;
  for (std::size_t r = 0; r < steps.size(); ++r) {
    Element flag =
        steps[r].action == PlanStep::Action::Answer ? lib.tru : lib.fls;
    TermPtr reply = Term::apps({ce(lib.pair_maker[2]), ce(flag),
                                source_term(r, steps[r])});
    thunks.push_back(Term::lam("_dummy", reply));
  }

  TermPtr select = thunks.back();
  if (steps.size() > 1) {
    TermPtr hdr = Term::app(h, ce(u21));
    std::vector<TermPtr> conds;
    for (std::size_t r = 0; r + 1 < steps.size(); ++r) {
      conds.push_back(Term::app(ce(lib.zero_test), hdr));
      hdr = Term::app(ce(dec), hdr);
    }
    for (std::size_t r = steps.size() - 1; r-- > 0;)
      select = Term::apps({ce(lib.ite), conds[r], thunks[r], select});
  }

  TermPtr machine = Term::lam("h", Term::app(select, ce(lib.tru)));
  return lib.eval_defined(machine, "dialogue plan machine");
}

OracleModel::OracleModel(Model& base, StdLib& lib, OracleFn f,
                         std::size_t max_rounds)
    : base_(base), lib_(lib), f_(std::move(f)), max_rounds_(max_rounds) {
  // k' answers immediately with a machine that in turn answers immediately
  // with the original input: two dialogues, no queries.
  Element m = lib_.eval_defined(
      Term::lam("a", Term::lam("h2", Term::apps({ce(lib_.pair_maker[2]),
                                                 ce(lib_.tru),
                                                 Term::variable("a")}))),
      "constant-machine maker");
  kprime_ = lib_.eval_defined(
      Term::lam("h", Term::apps({ce(lib_.pair_maker[2]), ce(lib_.tru),
                                 Term::app(ce(m),
                                           Term::app(Term::variable("h"),
                                                     ce(lib_.proj[2][2])))})),
      "dialogue k combinator");
}

std::string OracleModel::name() const { return "oracle[" + base_.name() + "]"; }

EvalOutcome OracleModel::apply(Element a, Element b, Fuel fuel) {
  return oracle_apply(base_, lib_, f_, a, b, fuel, max_rounds_).first;
}

std::string OracleModel::show(Element e) const { return base_.show(e); }

std::optional<Element> OracleModel::combinator_k() { return kprime_; }

std::optional<std::pair<Element, Element>> OracleModel::divergent_pair() {
  return base_.divergent_pair();
}

std::optional<Element> OracleModel::resolve(const std::string& name) {
  return base_.resolve(name);
}

}  // namespace pca::oracle
