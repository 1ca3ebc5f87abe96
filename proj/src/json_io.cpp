#include "pca/json_io.hpp"

namespace pca {

Json json_outcome(const Model& m, const EvalOutcome& o) {
  Json j;
  j["kind"] = kind_name(o.kind());
  if (o.is_defined()) j["value"] = m.show(o.value());
  j["spent"] = o.spent();
  return j;
}

Json json_nat_outcome(const Outcome<Nat>& o) {
  Json j;
  j["kind"] = kind_name(o.kind());
  if (o.is_defined()) j["value"] = o.value().get_str();
  j["spent"] = o.spent();
  return j;
}

Json json_record(const Model& m, const AppRecord& r) {
  Json j;
  j["lhs"] = m.show(r.lhs);
  j["rhs"] = m.show(r.rhs);
  if (r.coord) j["coord"] = r.coord->get_str();
  j["fuel"] = r.fuel;
  j["kind"] = kind_name(r.kind);
  if (r.value) j["value"] = m.show(*r.value);
  if (r.coord_value) j["coord_value"] = r.coord_value->get_str();
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json json_witness(const Model& m, const Witness& w) {
  Json j;
  j["kind"] = w.kind;
  j["clause"] = w.clause;
  Json offs = Json::array();
  for (Element e : w.offenders) offs.push_back(m.show(e));
  j["offenders"] = std::move(offs);
  Json tr = Json::array();
  for (const AppRecord& r : w.transcript) tr.push_back(json_record(m, r));
  j["transcript"] = std::move(tr);
  return j;
}

Json json_replay(const ReplayReport& r) {
  Json j;
  j["ok"] = r.ok;
  if (!r.ok) {
    j["failed_index"] = r.failed_index;
    j["detail"] = r.detail;
  }
  return j;
}

Json json_table(const FiniteTable& t) {
  Json j;
  j["n"] = t.n;
  j["k"] = t.k;
  j["s"] = t.s;
  Json rows = Json::array();
  for (int a = 0; a < t.n; ++a) {
    Json row = Json::array();
    for (int b = 0; b < t.n; ++b) {
      auto v = t.at(a, b);
      if (v)
        row.push_back(*v);
      else
        row.push_back(nullptr);
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

Json json_axioms(const AxiomReport& r) {
  Json j;
  j["ok"] = r.ok;
  if (r.first) {
    Json v;
    v["clause"] = r.first->clause;
    v["triple"] = Json::array({r.first->triple[0], r.first->triple[1],
                               r.first->triple[2]});
    j["violation"] = std::move(v);
  }
  return j;
}

Json json_dialogue(const Model& m, const oracle::DialogueTranscript& t) {
  Json j;
  j["status"] = oracle::status_name(t.status);
  if (t.result) j["result"] = m.show(*t.result);
  j["fuel_spent"] = t.fuel_spent;
  Json qs = Json::array();
  for (Element q : t.queries) qs.push_back(m.show(q));
  j["queries"] = std::move(qs);
  Json as = Json::array();
  for (Element a : t.answers) as.push_back(m.show(a));
  j["answers"] = std::move(as);
  Json rs = Json::array();
  for (const auto& r : t.rounds) {
    Json rj;
    rj["history"] = m.show(r.history);
    rj["reply"] = m.show(r.reply);
    rj["is_answer"] = r.is_answer;
    rj["payload"] = m.show(r.payload);
    rs.push_back(std::move(rj));
  }
  j["rounds"] = std::move(rs);
  return j;
}

Json json_k_report(const fb::Sim::KReport& r) {
  Json j;
  j["found"] = r.found;
  j["code"] = r.code;
  j["appointed_at"] = r.appointed_at;
  j["detail"] = r.detail;
  Json ss = Json::array();
  for (const auto& s : r.samples) {
    Json sj;
    sj["a"] = s.a.get_str();
    sj["image"] = s.image.get_str();
    sj["b"] = s.b.get_str();
    sj["roundtrip"] = s.roundtrip.get_str();
    ss.push_back(std::move(sj));
  }
  j["samples"] = std::move(ss);
  return j;
}

Json json_invariants(const fb::Sim::Invariants& v) {
  Json j;
  j["ok"] = v.ok;
  j["violations"] = v.violations;
  return j;
}

Json json_events(const std::vector<fb::StageEvent>& evs, std::size_t limit) {
  Json j = Json::array();
  std::size_t start = evs.size() > limit ? evs.size() - limit : 0;
  for (std::size_t i = start; i < evs.size(); ++i) {
    const auto& ev = evs[i];
    Json e;
    e["kind"] = ev.kind == fb::StageEvent::Kind::Appoint ? "appoint" : "release";
    e["stage"] = ev.stage;
    if (ev.rule) e["rule"] = ev.rule;
    e["e"] = ev.e;
    e["x"] = ev.x;
    e["detail"] = ev.detail;
    j.push_back(std::move(e));
  }
  return j;
}

std::string dump_doc(const std::string& verb, const Json& result) {
  Json doc;
  doc["schema_version"] = 1;
  doc["verb"] = verb;
  doc["result"] = result;
  return doc.dump(2) + "\n";
}

}  // namespace pca
