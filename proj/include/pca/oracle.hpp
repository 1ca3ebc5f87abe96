#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pca/kernel.hpp"
#include "pca/model.hpp"

namespace pca::oracle {

// External function consulted during a dialogue: an ordered lookup table
// with a fallback value for everything else.
struct OracleFn {
  std::vector<std::pair<Element, Element>> entries;
  Element fallback{};

  Element operator()(Element q) const {
    for (const auto& [key, val] : entries)
      if (key == q) return val;
    return fallback;
  }
};

enum class DialogueStatus { Done, FuelExhausted, Diverged, InvalidReply, RoundLimit };
std::string status_name(DialogueStatus s);

struct RoundRecord {
  Element history{};  // what the machine was shown
  Element reply{};    // the raw pair it returned
  bool is_answer = false;
  Element payload{};  // final answer or oracle query
};

struct DialogueTranscript {
  std::vector<Element> queries;
  std::vector<Element> answers;
  std::vector<RoundRecord> rounds;
  DialogueStatus status = DialogueStatus::RoundLimit;
  std::optional<Element> result;
  Fuel fuel_spent = 0;
};

constexpr std::size_t kMaxRounds = 8;

// Runs the query dialogue of machine a on input b against oracle f.
// Round i shows a the history ⟨i, b⟩ (i = 0) or ⟨i, ⟨b, answers-so-far⟩⟩;
// a replies ⟨true, result⟩ to finish or ⟨false, query⟩ to consult f.
std::pair<EvalOutcome, DialogueTranscript> oracle_apply(
    Model& model, StdLib& lib, const OracleFn& f, Element a, Element b,
    Fuel fuel, std::size_t max_rounds = kMaxRounds);

// Straight-line dialogue plans: ask a few queries, then answer.
struct PlanStep {
  enum class Action { Ask, Answer } action = Action::Ask;
  enum class Source { Input, PriorAnswer, Literal } source = Source::Input;
  std::size_t answer_index = 0;  // for PriorAnswer
  Element literal{};             // for Literal
};

struct DialoguePlan {
  std::vector<PlanStep> steps;
};

// Compiles a plan into a single machine element: it dispatches on the round
// header, extracts its payload from the shown history, and tags it as a
// query or an answer. Throws PlanError on malformed plans.
Element compile_plan(Model& model, StdLib& lib, const DialoguePlan& plan);

// The model relative to an oracle: application runs the dialogue. Exposes an
// honest k combinator (whose dialogues never ask anything); s is left
// unexposed, so the relative structure is used as a pas here.
class OracleModel final : public Model {
 public:
  OracleModel(Model& base, StdLib& lib, OracleFn f,
              std::size_t max_rounds = kMaxRounds);

  std::string name() const override;
  EvalOutcome apply(Element a, Element b, Fuel fuel) override;
  std::string show(Element e) const override;
  std::optional<Element> combinator_k() override;
  std::optional<Element> combinator_s() override { return std::nullopt; }
  std::optional<std::pair<Element, Element>> divergent_pair() override;
  std::optional<Element> resolve(const std::string& name) override;

  const OracleFn& oracle() const { return f_; }

 private:
  Model& base_;
  StdLib& lib_;
  OracleFn f_;
  std::size_t max_rounds_;
  Element kprime_{};
};

}  // namespace pca::oracle
