#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "pca/model.hpp"
#include "pca/nat.hpp"
#include "pca/witness.hpp"

namespace pca::k2 {

// Reply of an operator rule when shown the argument values read so far.
struct RuleReply {
  enum class Kind { Read, Answer, Reject } kind;
  Nat value;  // Answer payload

  static RuleReply read() { return {Kind::Read, 0}; }
  static RuleReply answer(Nat v) { return {Kind::Answer, std::move(v)}; }
  static RuleReply reject() { return {Kind::Reject, 0}; }
};

// coord = which output coordinate is being produced; prefix = argument
// values read so far (positions 0..len-1).
using RuleFn = std::function<RuleReply(const Nat& coord, const std::vector<Nat>& prefix)>;

struct K2Desc {
  enum class Kind { Periodic, Rule, Applied } kind = Kind::Periodic;
  std::vector<Nat> prefix;   // Periodic
  std::vector<Nat> period;   // Periodic, nonempty
  std::string rule_name;     // Rule
  RuleFn rule;               // Rule
  Element a{}, b{};          // Applied
};

// Model of sequence elements: eventually periodic sequences, named operator
// rules, and lazy application nodes. Application consults the operator at
// query codes built from the argument prefix read so far; fuel counts those
// consultations.
class K2Model final : public Model {
 public:
  Element periodic(std::vector<Nat> prefix, std::vector<Nat> period);
  Element rule_element(const std::string& name, RuleFn fn);
  Element applied(Element a, Element b);
  Element all_zeros();
  Element all_ones();
  const K2Desc& desc(Element e) const;

  // Value of the sequence x at position i. For Applied descriptors this runs
  // the read-loop; `reads` (if given) collects the argument positions
  // consulted at the outermost level, `queries` the consultations charged.
  Outcome<Nat> coord(Element x, const Nat& i, Fuel fuel,
                     std::vector<Nat>* reads = nullptr,
                     Fuel* queries = nullptr);

  std::string name() const override { return "k2"; }
  EvalOutcome apply(Element a, Element b, Fuel fuel) override;
  std::string show(Element e) const override;
  std::optional<std::pair<Element, Element>> divergent_pair() override;
  std::optional<Element> resolve(const std::string& name) override;
  std::optional<Outcome<Nat>> coord_apply(Element a, Element b,
                                          const Nat& coord_index,
                                          Fuel fuel) override;

 private:
  Outcome<Nat> coord_impl(Element x, const Nat& i, Fuel& pool,
                          std::vector<Nat>* reads, int depth);
  Element intern(const std::string& key, K2Desc d);
  void check_rule_consistency(const std::string& name, const RuleFn& fn) const;

  std::vector<K2Desc> descs_;
  std::map<std::string, Element> interned_;
  mutable std::mutex mu_;
};

struct K2ApplyResult {
  Element result{};                      // the application element itself
  std::vector<Nat> values;               // coordinates 0..values.size()-1
  OutcomeKind stop = OutcomeKind::Defined;
  std::vector<std::vector<Nat>> reads;   // argument positions per coordinate
  Fuel queries = 0;
};

// Materializes the first `coords` coordinates of a·b.
K2ApplyResult k2_apply(K2Model& m, Element a, Element b, std::size_t coords,
                       Fuel fuel);

// (f, g) with disjoint domains covering every 0/1 sequence: f copies its
// argument but rejects on seeing a nonzero value; g answers all-ones once it
// has seen one.
std::pair<Element, Element> make_counterexample_pair(K2Model& m);

// Refutes "gamma decides whether its argument is the zero sequence": either
// gamma is already wrong on the zero sequence, or finitely many reads pin its
// verdict and a one-bit change past them flips the true answer.
Witness refute_continuous_decider(K2Model& m, Element gamma, Element yes_real,
                                  Element no_real, Fuel fuel);

std::vector<std::pair<std::string, Element>> candidate_decider_rules(K2Model& m);

}  // namespace pca::k2
