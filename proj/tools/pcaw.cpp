#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pca/errors.hpp"
#include "pca/finite.hpp"
#include "pca/friedberg.hpp"
#include "pca/json_io.hpp"
#include "pca/k1.hpp"
#include "pca/k2.hpp"
#include "pca/kernel.hpp"
#include "pca/oracle.hpp"
#include "pca/reductions.hpp"
#include "pca/suite.hpp"
#include "pca/term.hpp"
#include "pca/witness.hpp"

namespace {

using namespace pca;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Fuel default_fuel() {
  if (const char* v = std::getenv("PCA_DEFAULT_FUEL")) {
    char* end = nullptr;
    unsigned long long n = std::strtoull(v, &end, 10);
    if (end && *end == '\0' && n > 0) return static_cast<Fuel>(n);
  }
  return 100000;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Element/program specs are inline text or @file references.
std::string arg_text(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') return slurp(spec.substr(1));
  return spec;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Nat parse_nat(const std::string& s, const std::string& what) {
  if (!all_digits(s)) throw UsageError(what + " must be a decimal natural: " + s);
  return Nat(s);
}

void emit(const std::string& verb, const Json& result) {
  std::cout << dump_doc(verb, result);
}

// Extra constant names usable in s-expressions beyond what the model itself
// resolves: the identity, the booleans, and small curried numerals n0..n9.
ConstResolver stdlib_resolver(StdLib& lib) {
  return [&lib](const std::string& n) -> std::optional<Element> {
    if (n == "i") return lib.i;
    if (n == "true") return lib.tru;
    if (n == "false") return lib.fls;
    if (n.size() >= 2 && n[0] == 'n' && all_digits(n.substr(1)))
      return lib.numeral(std::stoul(n.substr(1)));
    return std::nullopt;
  };
}

Element eval_element(Model& m, StdLib& lib, const std::string& spec, Fuel fuel) {
  TermPtr t = parse_term(arg_text(spec));
  EvalOutcome o = eval_closed(m, t, fuel, stdlib_resolver(lib));
  if (!o.is_defined())
    throw UsageError("element spec did not denote a value: " + spec);
  return o.value();
}

int cmd_eval(const std::string& term_spec, const std::string& model, Fuel fuel) {
  TermPtr t = parse_term(arg_text(term_spec));
  Json r;
  r["model"] = model;
  if (model == "k1") {
    k1::K1Model m;
    StdLib lib = build_stdlib(m, fuel);
    EvalStats st;
    EvalOutcome o = eval_closed(m, t, fuel, stdlib_resolver(lib), &st);
    r["outcome"] = json_outcome(m, o);
    r["apply_calls"] = st.apply_calls;
  } else if (model == "k2") {
    k2::K2Model m;
    EvalStats st;
    EvalOutcome o = eval_closed(m, t, fuel, nullptr, &st);
    r["outcome"] = json_outcome(m, o);
    r["apply_calls"] = st.apply_calls;
  } else if (model.rfind("finite:", 0) == 0) {
    FiniteModel m(parse_table(slurp(model.substr(7))));
    EvalStats st;
    EvalOutcome o = eval_closed(m, t, fuel, nullptr, &st);
    r["outcome"] = json_outcome(m, o);
    r["apply_calls"] = st.apply_calls;
  } else {
    throw UsageError("unknown model selector: " + model +
                     " (use k1, k2, or finite:<table-file>)");
  }
  emit("eval", r);
  return 0;
}

int cmd_compile(const std::string& term_spec) {
  TermPtr t = parse_term(arg_text(term_spec));
  TermPtr c = eliminate_binders(t);
  Json r;
  r["input"] = print_term(t);
  r["combinator"] = print_term(c);
  Json fv = Json::array();
  for (const std::string& v : free_vars(c)) fv.push_back(v);
  r["free_vars"] = std::move(fv);
  emit("compile", r);
  return 0;
}

int cmd_k1_run(const std::string& prog_spec, const std::string& input_spec,
               Fuel fuel) {
  std::string text = arg_text(prog_spec);
  Nat code;
  Json r;
  if (all_digits(text)) {
    code = Nat(text);
  } else {
    k1::ProgPtr p = k1::parse_prog(text);
    code = k1::encode(p);
    r["program"] = k1::print_prog(p);
  }
  Nat input = parse_nat(arg_text(input_spec), "input");
  r["code"] = code.get_str();
  r["input"] = input.get_str();
  r["outcome"] = json_nat_outcome(k1::run(code, input, fuel));
  emit("k1 run", r);
  return 0;
}

Element k2_element(k2::K2Model& m, const std::string& spec) {
  std::string text = arg_text(spec);
  if (auto e = m.resolve(text)) return *e;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error&) {
    throw UsageError("bad sequence spec (builtin name or JSON expected): " + spec);
  }
  std::vector<Nat> prefix, period;
  for (const auto& v : j.value("prefix", Json::array()))
    prefix.emplace_back((unsigned long)v.get<std::uint64_t>());
  for (const auto& v : j.value("period", Json::array()))
    period.emplace_back((unsigned long)v.get<std::uint64_t>());
  if (period.empty()) period.emplace_back(0ul);
  return m.periodic(std::move(prefix), std::move(period));
}

int cmd_k2_apply(const std::string& alpha, const std::string& beta,
                 std::size_t coords, Fuel fuel) {
  k2::K2Model m;
  Element a = k2_element(m, alpha);
  Element b = k2_element(m, beta);
  k2::K2ApplyResult res = k2::k2_apply(m, a, b, coords, fuel);
  Json r;
  r["alpha"] = m.show(a);
  r["beta"] = m.show(b);
  r["coords_requested"] = coords;
  Json vals = Json::array();
  for (const Nat& v : res.values) vals.push_back(v.get_str());
  r["values"] = std::move(vals);
  r["stop"] = res.stop == OutcomeKind::Defined        ? "defined"
              : res.stop == OutcomeKind::ProvenDivergent ? "proven-divergent"
                                                         : "fuel-exhausted";
  Json reads = Json::array();
  for (const auto& per : res.reads) {
    Json row = Json::array();
    for (const Nat& p : per) row.push_back(p.get_str());
    reads.push_back(std::move(row));
  }
  r["reads"] = std::move(reads);
  r["queries"] = res.queries;
  emit("k2 apply", r);
  return 0;
}

void write_trace(const std::string& path, const std::vector<fb::StageEvent>& evs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open trace file: " + path);
  Json all = json_events(evs, evs.size());
  for (const Json& line : all) out << line.dump() << "\n";
}

int cmd_friedberg_run(std::uint64_t stages, const std::string& trace) {
  fb::Sim sim;
  sim.advance_to(stages);
  if (!trace.empty()) write_trace(trace, sim.events());
  Json r;
  r["stages"] = stages;
  r["active_followers"] = sim.followers().size();
  r["released"] = sim.released().size();
  r["event_count"] = sim.events().size();
  r["events_tail"] = json_events(sim.events(), 20);
  emit("friedberg run", r);
  return 0;
}

int cmd_friedberg_check(std::uint64_t stages, const std::string& trace) {
  fb::Sim sim;
  sim.advance_to(stages);
  if (!trace.empty()) write_trace(trace, sim.events());
  auto inv = sim.check_invariants();
  Json r;
  r["stages"] = stages;
  r["invariants"] = json_invariants(inv);
  emit("friedberg check", r);
  return inv.ok ? 0 : 1;
}

int cmd_friedberg_find_k(std::uint64_t stages, std::size_t samples,
                         std::uint64_t seed, const std::string& trace) {
  fb::Sim sim;
  auto rep = sim.find_k(stages, samples, seed);
  if (!trace.empty()) write_trace(trace, sim.events());
  emit("friedberg find-k", json_k_report(rep));
  return rep.found ? 0 : 1;
}

int cmd_friedberg_refute_s(const std::string& code_spec, Fuel budget,
                           std::uint64_t seed) {
  Nat code = parse_nat(arg_text(code_spec), "--code");
  fb::Sim sim;
  fb::PsiModel pm(sim);
  Witness w = fb::refute_s_candidate(sim, pm, code, budget, seed);
  ReplayReport rep = replay_witness(pm, w);
  Json r;
  r["code"] = code.get_str();
  r["witness"] = json_witness(pm, w);
  r["replay"] = json_replay(rep);
  emit("friedberg refute-s", r);
  return (!w.transcript.empty() && rep.ok) ? 0 : 1;
}

oracle::DialoguePlan parse_plan(Model& m, StdLib& lib, const std::string& spec,
                                Fuel fuel) {
  Json j;
  try {
    j = Json::parse(arg_text(spec));
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("bad plan JSON: ") + e.what());
  }
  const Json& steps = j.is_array() ? j : j.at("steps");
  oracle::DialoguePlan plan;
  for (const Json& sj : steps) {
    oracle::PlanStep st;
    std::string action = sj.at("action").get<std::string>();
    if (action == "ask")
      st.action = oracle::PlanStep::Action::Ask;
    else if (action == "answer")
      st.action = oracle::PlanStep::Action::Answer;
    else
      throw UsageError("plan step action must be ask/answer: " + action);
    std::string source = sj.at("source").get<std::string>();
    if (source == "input") {
      st.source = oracle::PlanStep::Source::Input;
    } else if (source == "prior") {
      st.source = oracle::PlanStep::Source::PriorAnswer;
      st.answer_index = sj.at("index").get<std::size_t>();
    } else if (source == "literal") {
      st.source = oracle::PlanStep::Source::Literal;
      st.literal = eval_element(m, lib, sj.at("term").get<std::string>(), fuel);
    } else {
      throw UsageError("plan step source must be input/prior/literal: " + source);
    }
    plan.steps.push_back(st);
  }
  return plan;
}

oracle::OracleFn parse_oracle(Model& m, StdLib& lib, const std::string& spec,
                              Fuel fuel) {
  Json j;
  try {
    j = Json::parse(arg_text(spec));
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("bad oracle JSON: ") + e.what());
  }
  oracle::OracleFn f;
  for (const Json& row : j.value("entries", Json::array())) {
    Element q = eval_element(m, lib, row.at(0).get<std::string>(), fuel);
    Element a = eval_element(m, lib, row.at(1).get<std::string>(), fuel);
    f.entries.emplace_back(q, a);
  }
  f.fallback = eval_element(m, lib, j.at("fallback").get<std::string>(), fuel);
  return f;
}

int cmd_oracle_run(const std::string& machine, const std::string& table,
                   const std::string& input, Fuel fuel) {
  k1::K1Model m;
  StdLib lib = build_stdlib(m, fuel);
  oracle::DialoguePlan plan = parse_plan(m, lib, machine, fuel);
  oracle::OracleFn f = parse_oracle(m, lib, table, fuel);
  Element mach = oracle::compile_plan(m, lib, plan);
  Element b = eval_element(m, lib, input, fuel);
  auto [out, tr] = oracle::oracle_apply(m, lib, f, mach, b, fuel);
  Json r;
  r["outcome"] = json_outcome(m, out);
  r["transcript"] = json_dialogue(m, tr);
  emit("oracle run", r);
  return 0;
}

// builtin:<name> resolves inside `family`; any other string is parsed as a term.
Element pick_candidate(Model& m, StdLib& lib, const std::string& spec, Fuel fuel,
                       const std::vector<std::pair<std::string, Element>>& family) {
  if (spec.rfind("builtin:", 0) == 0) {
    std::string name = spec.substr(8);
    for (const auto& [n, e] : family)
      if (n == name) return e;
    std::string known;
    for (const auto& [n, e] : family) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown builtin candidate " + name + " (have: " + known + ")");
  }
  return eval_element(m, lib, spec, fuel);
}

int cmd_refute(const std::string& kind, const std::string& cand_spec, Fuel fuel) {
  k1::K1Model m;
  StdLib lib = build_stdlib(m, fuel);
  Json r;
  r["kind"] = kind;
  Witness w;
  try {
    if (kind == "halting") {
      Element c = pick_candidate(m, lib, cand_spec, fuel,
                                 red::candidate_halting_deciders(m, lib));
      w = red::refute_halting_decider(m, lib, c, fuel);
    } else if (kind == "separator") {
      Element c = pick_candidate(m, lib, cand_spec, fuel,
                                 red::candidate_separators(m, lib));
      w = red::refute_separator(m, lib, c, fuel);
    } else if (kind == "extension") {
      Element c = pick_candidate(m, lib, cand_spec, fuel,
                                 red::candidate_total_extensions(m, lib));
      w = red::refute_total_extension(m, lib, c, red::make_c01(m, lib), fuel);
    } else {  // precomplete
      Element c = pick_candidate(m, lib, cand_spec, fuel, {});
      w = red::refute_precomplete_injective(m, lib, c, k1::identity_kernel(),
                                            red::make_c01(m, lib), fuel);
    }
  } catch (const PcaError& e) {
    r["error"] = e.what();
    emit("refute " + kind, r);
    return 1;
  }
  ReplayReport rep = replay_witness(m, w);
  r["witness"] = json_witness(m, w);
  r["replay"] = json_replay(rep);
  emit("refute " + kind, r);
  return (!w.transcript.empty() && rep.ok) ? 0 : 1;
}

int cmd_search_finite(int max_n) {
  Json sizes = Json::array();
  for (int n = 1; n <= max_n; ++n) {
    auto found = search_finite_pca(n);
    Json entry;
    entry["n"] = n;
    entry["count"] = found.size();
    Json tables = Json::array();
    for (std::size_t i = 0; i < found.size() && i < 10; ++i)
      tables.push_back(json_table(found[i]));
    entry["tables"] = std::move(tables);
    sizes.push_back(std::move(entry));
  }
  Json r;
  r["max_n"] = max_n;
  r["sizes"] = std::move(sizes);
  emit("search-finite-pca", r);
  return 0;
}

int cmd_suite(std::uint64_t seed) {
  Json r = run_suite(seed);
  emit("suite", r);
  return r["all_pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for computability in partial combinatory algebras"};
  app.require_subcommand(1);
  Fuel fuel = default_fuel();

  std::string eval_term, eval_model = "k1";
  CLI::App* c_eval = app.add_subcommand("eval", "evaluate a closed term");
  c_eval->add_option("term", eval_term, "s-expression or @file")->required();
  c_eval->add_option("--model", eval_model, "k1 | k2 | finite:<table-file>");
  c_eval->add_option("--fuel", fuel, "application budget");

  std::string compile_term;
  CLI::App* c_compile = app.add_subcommand("compile", "eliminate binders from a term");
  c_compile->add_option("term", compile_term, "s-expression or @file")->required();

  CLI::App* c_k1 = app.add_subcommand("k1", "first-model operations");
  c_k1->require_subcommand(1);
  std::string k1_prog, k1_input;
  CLI::App* c_k1_run = c_k1->add_subcommand("run", "run a coded program");
  c_k1_run->add_option("program", k1_prog, "decimal code, s-expression, or @file")->required();
  c_k1_run->add_option("input", k1_input, "decimal input")->required();
  c_k1_run->add_option("--fuel", fuel, "step budget");

  CLI::App* c_k2 = app.add_subcommand("k2", "sequence-model operations");
  c_k2->require_subcommand(1);
  std::string k2_alpha, k2_beta;
  std::size_t k2_coords = 8;
  CLI::App* c_k2_apply = c_k2->add_subcommand("apply", "materialize coordinates of alpha·beta");
  c_k2_apply->add_option("--alpha", k2_alpha, "builtin name or JSON {prefix,period}")->required();
  c_k2_apply->add_option("--beta", k2_beta, "builtin name or JSON {prefix,period}")->required();
  c_k2_apply->add_option("--coords", k2_coords, "coordinates to produce");
  c_k2_apply->add_option("--fuel", fuel, "consultation budget");

  CLI::App* c_fb = app.add_subcommand("friedberg", "enumeration simulator");
  c_fb->require_subcommand(1);
  std::uint64_t fb_stages = 2000, fb_seed = 7;
  std::size_t fb_samples = 20;
  std::string fb_trace, fb_code;
  Fuel fb_budget = 5000;
  CLI::App* c_fb_run = c_fb->add_subcommand("run", "advance the construction");
  c_fb_run->add_option("--stages", fb_stages, "stages to process")->required();
  c_fb_run->add_option("--trace", fb_trace, "write stage events as JSON lines");
  CLI::App* c_fb_check = c_fb->add_subcommand("check", "run and verify invariants");
  c_fb_check->add_option("stages", fb_stages, "stages to process");
  c_fb_check->add_option("--trace", fb_trace, "write stage events as JSON lines");
  CLI::App* c_fb_findk = c_fb->add_subcommand("find-k", "extract the k-like element");
  c_fb_findk->add_option("--stages", fb_stages, "stage budget");
  c_fb_findk->add_option("--samples", fb_samples, "verification samples");
  c_fb_findk->add_option("--seed", fb_seed, "sample seed");
  c_fb_findk->add_option("--trace", fb_trace, "write stage events as JSON lines");
  CLI::App* c_fb_refs = c_fb->add_subcommand("refute-s", "refute an s-candidate code");
  c_fb_refs->add_option("--code", fb_code, "candidate code")->required();
  c_fb_refs->add_option("--budget", fb_budget, "stage budget");
  c_fb_refs->add_option("--seed", fb_seed, "probe seed");

  CLI::App* c_or = app.add_subcommand("oracle", "dialogue operations");
  c_or->require_subcommand(1);
  std::string or_machine, or_table, or_input;
  CLI::App* c_or_run = c_or->add_subcommand("run", "run a machine against a table oracle");
  c_or_run->add_option("--machine", or_machine, "plan JSON or @file")->required();
  c_or_run->add_option("--oracle", or_table, "table JSON or @file")->required();
  c_or_run->add_option("--input", or_input, "element s-expression or @file")->required();
  c_or_run->add_option("--fuel", fuel, "application budget");

  CLI::App* c_ref = app.add_subcommand("refute", "witness-producing refuters");
  c_ref->require_subcommand(1);
  std::string ref_cand;
  std::vector<CLI::App*> ref_subs;
  for (const char* kind : {"halting", "separator", "extension", "precomplete"}) {
    CLI::App* sub = c_ref->add_subcommand(kind, std::string("refute a ") + kind + " candidate");
    sub->add_option("--candidate", ref_cand, "builtin:<name>, s-expression, or @file")->required();
    sub->add_option("--fuel", fuel, "application budget");
    ref_subs.push_back(sub);
  }

  int search_max_n = 2;
  CLI::App* c_search = app.add_subcommand("search-finite-pca", "enumerate small total models");
  c_search->add_option("--max-n", search_max_n, "largest carrier size")
      ->check(CLI::Range(1, 3));

  std::uint64_t suite_seed = 7;
  CLI::App* c_suite = app.add_subcommand("suite", "run the full acceptance battery");
  c_suite->add_option("--seed", suite_seed, "probe seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*c_eval) return cmd_eval(eval_term, eval_model, fuel);
    if (*c_compile) return cmd_compile(compile_term);
    if (*c_k1_run) return cmd_k1_run(k1_prog, k1_input, fuel);
    if (*c_k2_apply) return cmd_k2_apply(k2_alpha, k2_beta, k2_coords, fuel);
    if (*c_fb_run) return cmd_friedberg_run(fb_stages, fb_trace);
    if (*c_fb_check) return cmd_friedberg_check(fb_stages, fb_trace);
    if (*c_fb_findk) return cmd_friedberg_find_k(fb_stages, fb_samples, fb_seed, fb_trace);
    if (*c_fb_refs) return cmd_friedberg_refute_s(fb_code, fb_budget, fb_seed);
    if (*c_or_run) return cmd_oracle_run(or_machine, or_table, or_input, fuel);
    if (*ref_subs[0]) return cmd_refute("halting", ref_cand, fuel);
    if (*ref_subs[1]) return cmd_refute("separator", ref_cand, fuel);
    if (*ref_subs[2]) return cmd_refute("extension", ref_cand, fuel);
    if (*ref_subs[3]) return cmd_refute("precomplete", ref_cand, fuel);
    if (*c_search) return cmd_search_finite(search_max_n);
    if (*c_suite) return cmd_suite(suite_seed);
    std::cerr << "no verb selected\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const TermError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
