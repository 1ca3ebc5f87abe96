#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace pca {

using Fuel = std::uint64_t;

// Opaque per-model element handle; equality of handles is the model's
// native element equality.
using Element = std::uint64_t;

enum class OutcomeKind { Defined, ProvenDivergent, FuelExhausted };

inline std::string kind_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Defined:
      return "defined";
    case OutcomeKind::ProvenDivergent:
      return "proven-divergent";
    default:
      return "fuel-exhausted";
  }
}

// Result of a fueled partial computation. Defined and ProvenDivergent are
// final: a larger budget never changes them. FuelExhausted may become
// either. `spent` records the budget consumed (for Defined runs this is the
// exact number of steps to halt).
template <class T>
class Outcome {
 public:
  static Outcome defined(T v, Fuel spent = 0) {
    Outcome o;
    o.kind_ = OutcomeKind::Defined;
    o.value_ = std::move(v);
    o.spent_ = spent;
    return o;
  }
  static Outcome diverged(Fuel spent = 0) {
    Outcome o;
    o.kind_ = OutcomeKind::ProvenDivergent;
    o.spent_ = spent;
    return o;
  }
  static Outcome exhausted(Fuel spent) {
    Outcome o;
    o.kind_ = OutcomeKind::FuelExhausted;
    o.spent_ = spent;
    return o;
  }

  OutcomeKind kind() const { return kind_; }
  bool is_defined() const { return kind_ == OutcomeKind::Defined; }
  bool is_diverged() const { return kind_ == OutcomeKind::ProvenDivergent; }
  bool is_exhausted() const { return kind_ == OutcomeKind::FuelExhausted; }

  const T& value() const {
    if (!is_defined()) throw std::logic_error("Outcome::value on non-Defined outcome");
    return *value_;
  }
  Fuel spent() const { return spent_; }

  template <class F>
  auto map(F&& f) const -> Outcome<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    switch (kind_) {
      case OutcomeKind::Defined:
        return Outcome<U>::defined(f(*value_), spent_);
      case OutcomeKind::ProvenDivergent:
        return Outcome<U>::diverged(spent_);
      default:
        return Outcome<U>::exhausted(spent_);
    }
  }

 private:
  OutcomeKind kind_ = OutcomeKind::FuelExhausted;
  std::optional<T> value_;
  Fuel spent_ = 0;
};

using EvalOutcome = Outcome<Element>;

}  // namespace pca
