#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pca/model.hpp"

namespace pca {

// Partial binary operation on {0,…,n-1} with designated k and s elements.
struct FiniteTable {
  int n = 0;
  std::vector<std::optional<int>> cells;  // row-major: cells[a*n + b] = a·b
  int k = 0;
  int s = 0;

  std::optional<int> at(int a, int b) const { return cells[a * n + b]; }
  std::optional<int>& at(int a, int b) { return cells[a * n + b]; }
};

struct AxiomViolation {
  std::string clause;          // which law broke
  std::array<int, 3> triple{};  // the witnessing elements (unused slots = -1)
};

struct AxiomReport {
  bool ok = true;
  std::optional<AxiomViolation> first;
};

// Checks the two combinator laws (k a b = a everywhere; s a b defined and
// s a b c ≃ (a c)(b c)) against every element triple.
AxiomReport check_pas_axioms(const FiniteTable& t);

// Exhaustive search over all partial tables and k/s designations for a given
// size, in lexicographic order. Only sizes 1..3 are allowed.
std::vector<FiniteTable> search_finite_pca(int n);

std::string serialize_table(const FiniteTable& t);
FiniteTable parse_table(const std::string& text);

class FiniteModel final : public Model {
 public:
  explicit FiniteModel(FiniteTable t);

  std::string name() const override { return "finite"; }
  EvalOutcome apply(Element a, Element b, Fuel fuel) override;
  std::string show(Element e) const override;
  std::optional<Element> combinator_k() override;
  std::optional<Element> combinator_s() override;
  std::optional<std::pair<Element, Element>> divergent_pair() override;
  std::optional<Element> resolve(const std::string& name) override;

  const FiniteTable& table() const { return table_; }

 private:
  FiniteTable table_;
};

}  // namespace pca
