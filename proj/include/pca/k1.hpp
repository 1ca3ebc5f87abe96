#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pca/model.hpp"
#include "pca/nat.hpp"
#include "pca/outcome.hpp"

namespace pca::k1 {

// Program language of the first model. Application of naturals is
// run(decode(n), m); Smn specializes a code with a constant and is a
// primitive so that the k/s constructions stay small.
enum class Op {
  Input,
  ConstNat,
  Succ,
  Double,
  Pred,
  PairNat,
  Fst,
  Snd,
  IfZero,
  Eq,
  Apply,
  Smn,
  Diverge
};

struct Prog;
using ProgPtr = std::shared_ptr<const Prog>;

struct Prog {
  Op op;
  Nat value;  // ConstNat payload
  ProgPtr a, b, c;

  static ProgPtr input();
  static ProgPtr const_nat(Nat v);
  static ProgPtr succ(ProgPtr e);
  static ProgPtr dbl(ProgPtr e);
  static ProgPtr pred(ProgPtr e);
  static ProgPtr pair(ProgPtr e1, ProgPtr e2);
  static ProgPtr fst(ProgPtr e);
  static ProgPtr snd(ProgPtr e);
  static ProgPtr if_zero(ProgPtr guard, ProgPtr then_e, ProgPtr else_e);
  static ProgPtr eq(ProgPtr e1, ProgPtr e2);
  static ProgPtr apply(ProgPtr code, ProgPtr arg);
  static ProgPtr smn_node(ProgPtr code, ProgPtr constant);
  static ProgPtr diverge();
};

// Self-delimiting structure code. decode is total: strings that fail to
// parse exactly decode to the diverging program. encode∘decode is the
// identity on the decidable set of valid codes, decode∘encode the identity
// on all programs.
Nat encode(const ProgPtr& p);
ProgPtr decode(const Nat& code);
bool valid_code(const Nat& code);

// S-expression program text: (input), (const-nat N), (succ e), (double e),
// (pred e), (pair e1 e2), (fst e), (snd e), (if-zero g t e), (eq a b),
// (apply e1 e2), (smn e1 e2), (diverge).
std::string print_prog(const ProgPtr& p);
ProgPtr parse_prog(const std::string& text);

// Big-step evaluation of decode(code) on input. Fuel counts node visits and
// is shared across Apply self-interpretation. Defined outcomes report the
// exact visit count as spent, so "halts within s steps" is budget ≥ spent.
Outcome<Nat> run(const Nat& code, const Nat& input, Fuel fuel);

// Two-argument convention: run2(c, a, x) = run(c, pair(a, x)).
Outcome<Nat> run2(const Nat& code, const Nat& a, const Nat& x, Fuel fuel);

// Specialization: run(smn(c, a), x) ≃ run2(c, a, x); total, injective in a.
Nat smn(const Nat& code, const Nat& a);

const Nat& k_code();
const Nat& s_code();
const Nat& diverge_code();
// The program a ↦ 2a+1, the small fixed code the enumeration modules track.
const Nat& double_plus_one_code();

// Totalizer for the standard numbering: f = precomplete_totalizer(b) is
// total, and whenever b·a is defined, f·a codes the same function as the
// value of b·a (first run b·a, then run its value on the real input).
Nat precomplete_totalizer(const Nat& b);

class K1Model final : public Model {
 public:
  std::string name() const override { return "k1"; }
  EvalOutcome apply(Element a, Element b, Fuel fuel) override;
  std::string show(Element a) const override;
  std::optional<Element> combinator_k() override;
  std::optional<Element> combinator_s() override;
  std::optional<std::pair<Element, Element>> divergent_pair() override;
  // Digit strings resolve to their own code; "k"/"s" to the combinators.
  std::optional<Element> resolve(const std::string& name) override;

  Element from_nat(const Nat& n);
  Nat nat_of(Element e) const;

 private:
  mutable std::mutex mu_;
  std::map<Nat, Element> index_;
  std::vector<Nat> values_;
};

// Kernel of a numbering: how codes are compared. The identity kernel claims
// a 1-1 numbering (handle equality); the extensional kernel compares codes
// by observed application behaviour on probes and never reports "equal".
struct KernelVerdict {
  bool distinguished = false;
  std::optional<Element> probe;  // a probe witnessing the distinction
};

struct NumberingKernel {
  std::string label;
  bool is_identity = false;
  KernelVerdict agrees(Model& model, Element a, Element b, const std::vector<Element>& probes,
                       Fuel fuel) const;
};

NumberingKernel identity_kernel();
NumberingKernel extensional_kernel();

}  // namespace pca::k1
