#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pca/errors.hpp"
#include "pca/model.hpp"
#include "pca/term.hpp"

namespace pca {

// Derived standard vocabulary of a pca, built once per model by compiling
// the usual abstraction definitions and evaluating them to elements.
class StdLib {
 public:
  static constexpr std::size_t kMaxTupleArity = 4;

  Model* model = nullptr;
  Fuel fuel = 0;

  Element k{}, s{}, i{};
  Element tru{}, fls{}, ite{};
  Element bool_not{}, bool_and{};
  Element zero_test{};             // true exactly on numeral 0
  Element conv_c{}, conv_d{};      // boolean→numeral and numeral→boolean
  std::optional<Element> diverger; // h with h·a provably divergent, if the model has one

  // pair_maker[n]·x1·…·xn = ⟨x1,…,xn⟩ and ⟨x⃗⟩·proj[n][j] = xj (1-based).
  std::array<Element, kMaxTupleArity + 1> pair_maker{};
  std::array<std::array<Element, kMaxTupleArity + 1>, kMaxTupleArity + 1> proj{};

  Element numeral(std::size_t n);
  Element pair2(Element a, Element b);
  Element tuple(const std::vector<Element>& xs);
  // Reverse lookup against the numerals materialized so far.
  std::optional<std::size_t> numeral_index(Element e) const;

  EvalOutcome eval(const TermPtr& t);
  Element eval_defined(const TermPtr& t, const std::string& what);
  EvalOutcome apply_chain(std::initializer_list<Element> es);

  TermPtr ce(Element e, const std::string& label = "_") const;  // constant term

 private:
  std::vector<Element> numerals_;
  friend StdLib build_stdlib(Model& model, Fuel fuel);
};

// Fails with StdlibError if the model lacks k/s or a smoke law fails.
StdLib build_stdlib(Model& model, Fuel fuel);

// e = w·w with w = λ*x.λ*y.(f(xx))y, so e·y ≃ f·e·y.
EvalOutcome fixpoint(Model& model, StdLib& lib, Element f, Fuel fuel);

struct ObsVerdict {
  bool distinguished = false;
  std::optional<Element> probe;
  std::string detail;  // "agree-on-probes" or "distinguished"
};

// Never claims equality: either a probe separates a and b (defined values
// differ, or one side defined where the other provably diverges), or they
// agree on every probe tried.
ObsVerdict observational_eq(Model& model, Element a, Element b,
                            const std::vector<Element>& probes, Fuel fuel);

}  // namespace pca
