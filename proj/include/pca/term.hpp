#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pca/errors.hpp"
#include "pca/model.hpp"
#include "pca/outcome.hpp"

namespace pca {

enum class TermKind { Const, Var, App, Lambda };

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable term tree: constants (optionally pre-resolved to an element of
// some model), variables, applications, and the surface-only binder that
// the abstraction compiler eliminates.
class Term {
 public:
  TermKind kind;
  std::string name;                  // Const display/lookup name, Var name, Lambda binder
  std::optional<Element> element;    // Const only: pre-resolved element
  TermPtr left;                      // App left
  TermPtr right;                     // App right, Lambda body

  static TermPtr constant(std::string n, std::optional<Element> e = std::nullopt);
  static TermPtr variable(std::string n);
  static TermPtr app(TermPtr l, TermPtr r);
  static TermPtr lam(std::string binder, TermPtr body);

  // Left-associated application chain a b c = ((a b) c).
  static TermPtr apps(std::initializer_list<TermPtr> ts);
  static TermPtr apps(const std::vector<TermPtr>& ts);
};

std::set<std::string> free_vars(const TermPtr& t);

// Replaces free occurrences of x; the replacement must be closed (the only
// use this workbench needs), so no capture handling is required.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& replacement);

// Abstraction compiler. body must be binder-free (eliminate inner binders
// first, innermost-first). Rules, in order: the bound variable compiles to
// the atom `i`; other atoms (constants, other variables) compile to `k`
// applied to the atom; applications compile through `s`. The result is
// binder-free, always denotes, and satisfies (λ*x.t)·a ≃ t[x:=a].
TermPtr lambda_star(const std::string& x, const TermPtr& body);

// Eliminates every Lambda node, innermost first.
TermPtr eliminate_binders(const TermPtr& t);

// S-expression surface syntax: (app t1 t2), (lam x t), (const NAME), (var x).
std::string print_term(const TermPtr& t);
TermPtr parse_term(const std::string& text);

using ConstResolver = std::function<std::optional<Element>(const std::string&)>;

struct EvalStats {
  Fuel apply_calls = 0;
};

// Strict leftmost-innermost evaluation of a closed term. Binders are
// eliminated first. Fuel counts model-application calls; each call receives
// the full per-call budget `fuel`. Constants resolve through their embedded
// element, then `resolver`, then the model's own resolve().
EvalOutcome eval_closed(Model& model, const TermPtr& t, Fuel fuel,
                        const ConstResolver& resolver = nullptr, EvalStats* stats = nullptr);

}  // namespace pca
