#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pca/json_io.hpp"

namespace pca {

// One checked property bundle, run at its contracted size. `details` holds
// deterministic data only (counts, samples, witness clauses) — never
// wall-clock readings, so equal seeds give identical bytes.
struct CriterionResult {
  std::string id;
  bool pass = false;
  Json details;
};

CriterionResult crit_combinator_laws(std::uint64_t seed);
CriterionResult crit_abstraction_contract(std::uint64_t seed);
CriterionResult crit_stdlib_identities();
CriterionResult crit_finite_search();
CriterionResult crit_sequence_domains(std::uint64_t seed);
CriterionResult crit_halting_machinery(std::uint64_t seed);
CriterionResult crit_oracle_protocol(std::uint64_t seed);
CriterionResult crit_enumeration_run(std::uint64_t seed);
CriterionResult crit_s_refutation(std::uint64_t seed);
CriterionResult crit_separation_extension(std::uint64_t seed);
CriterionResult crit_recursion_fixpoints(std::uint64_t seed);

// All of the above, in order.
std::vector<CriterionResult> run_all_criteria(std::uint64_t seed);

// CLI `suite` payload: {"seed", "criteria": [{id, pass, details}...],
// "all_pass"}.
Json run_suite(std::uint64_t seed);

}  // namespace pca
