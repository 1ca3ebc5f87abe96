#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pca/model.hpp"
#include "pca/nat.hpp"

namespace pca {

// One recorded application, replayable against the model that produced it.
// Plain records go through Model::apply; records with `coord` set go through
// Model::coord_apply (coordinate probes of sequence-like models).
struct AppRecord {
  Element lhs{};
  Element rhs{};
  std::optional<Nat> coord;
  Fuel fuel = 0;
  OutcomeKind kind = OutcomeKind::FuelExhausted;
  std::optional<Element> value;      // when defined and coord is unset
  std::optional<Nat> coord_value;    // when defined and coord is set
  std::string note;
};

struct Witness {
  std::string kind;    // which claim is being refuted
  std::string clause;  // human-readable contradiction
  std::vector<Element> offenders;
  std::vector<AppRecord> transcript;
};

struct ReplayReport {
  bool ok = true;
  std::size_t failed_index = 0;
  std::string detail;
};

// Re-runs every record and demands the identical outcome kind and value.
ReplayReport replay_witness(Model& model, const Witness& w);

// Convenience: perform an application and capture it as a record.
AppRecord record_apply(Model& model, Element a, Element b, Fuel fuel,
                       std::string note);
AppRecord record_coord(Model& model, Element a, Element b, const Nat& coord,
                       Fuel fuel, std::string note);

}  // namespace pca
