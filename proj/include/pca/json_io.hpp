#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "pca/finite.hpp"
#include "pca/friedberg.hpp"
#include "pca/model.hpp"
#include "pca/oracle.hpp"
#include "pca/witness.hpp"

namespace pca {

// All CLI output funnels through these builders so that field order (and
// hence the emitted bytes) is deterministic. Unbounded naturals are encoded
// as decimal strings; fuel counters as JSON integers.
using Json = nlohmann::ordered_json;

Json json_outcome(const Model& m, const EvalOutcome& o);
Json json_nat_outcome(const Outcome<Nat>& o);
Json json_record(const Model& m, const AppRecord& r);
Json json_witness(const Model& m, const Witness& w);
Json json_replay(const ReplayReport& r);
Json json_table(const FiniteTable& t);
Json json_axioms(const AxiomReport& r);
Json json_dialogue(const Model& m, const oracle::DialogueTranscript& t);
Json json_k_report(const fb::Sim::KReport& r);
Json json_invariants(const fb::Sim::Invariants& v);
Json json_events(const std::vector<fb::StageEvent>& evs, std::size_t limit);

// Complete CLI document: {"schema_version", "verb", "result"}, two-space
// indentation, trailing newline.
std::string dump_doc(const std::string& verb, const Json& result);

}  // namespace pca
