#pragma once

#include <optional>
#include <string>
#include <utility>

#include "pca/nat.hpp"
#include "pca/outcome.hpp"

namespace pca {

// A partial applicative structure with fueled application. apply must be
// deterministic in (a, b, fuel), and Defined/ProvenDivergent outcomes must
// be stable under fuel increase.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual EvalOutcome apply(Element a, Element b, Fuel fuel) = 0;
  virtual std::string show(Element a) const = 0;

  // k and s when the model is a full pca; nullopt for bare pas models.
  virtual std::optional<Element> combinator_k() { return std::nullopt; }
  virtual std::optional<Element> combinator_s() { return std::nullopt; }

  // A pair (f, g) with f·g provably divergent, when the model has one.
  virtual std::optional<std::pair<Element, Element>> divergent_pair() { return std::nullopt; }

  // Named constants understood by the term surface ("k", "s", digits, ...).
  virtual std::optional<Element> resolve(const std::string& name) { return std::nullopt; }

  // Coordinate probe for models whose elements denote sequences: the value
  // of (a·b) at the given coordinate. nullopt when unsupported; used by
  // witness replay for records that carry a coordinate.
  virtual std::optional<Outcome<Nat>> coord_apply(Element a, Element b, const Nat& coord,
                                                  Fuel fuel) {
    (void)a;
    (void)b;
    (void)coord;
    (void)fuel;
    return std::nullopt;
  }
};

}  // namespace pca
