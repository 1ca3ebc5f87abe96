#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pca/model.hpp"
#include "pca/nat.hpp"
#include "pca/witness.hpp"

namespace pca::fb {

// Stage-driven construction of an injective numbering ψ of a family of
// functions: code 0 is empty, odd 2v+1 is the total constant v, and even
// codes are appointed as followers that shadow a program's staged
// approximation until a release rule freezes them (with a deterministic
// augmentation keeping every frozen entry distinct from everything else).

struct SimConfig {
  Fuel run_cap = 1u << 15;  // program step cap; doubled on demand
};

struct StageEvent {
  enum class Kind { Appoint, Release };
  Kind kind = Kind::Appoint;
  std::uint64_t stage = 0;
  int rule = 0;  // release rule 1|2|3, 0 for appointments
  std::uint64_t e = 0;
  std::uint64_t x = 0;
  std::string detail;
};

struct FrozenFn {
  std::uint64_t owner_e = 0;
  std::uint64_t x = 0;
  std::uint64_t release_stage = 0;
  int rule = 0;
  std::map<std::uint64_t, Nat> base;   // staged view at release
  std::map<std::uint64_t, Nat> patch;  // augmentation points
  std::string note;
};

class Sim {
 public:
  explicit Sim(SimConfig cfg = {});

  void advance_to(std::uint64_t stage);
  std::uint64_t stage() const { return stage_; }

  // ψ-application with the table as it stands at stage `stage_budget`
  // (the construction is advanced there first). Deterministic; defined and
  // provenly-missing answers are stable as the budget grows.
  Outcome<Nat> psi_apply(const Nat& code, const Nat& input, Fuel stage_budget);

  struct Invariants {
    bool ok = true;
    std::vector<std::string> violations;
  };
  Invariants check_invariants();

  struct KSample {
    Nat a, image, b, roundtrip;
  };
  struct KReport {
    bool found = false;
    std::uint64_t code = 0;           // ψ-code of the extracted element
    std::uint64_t appointed_at = 0;
    std::vector<KSample> samples;
    std::string detail;
  };
  // Locates the follower shadowing the doubling-successor program and checks
  // k-like behaviour on sampled arguments.
  KReport find_k(std::uint64_t stage_budget, std::size_t samples,
                 std::uint64_t seed);

  const std::map<std::uint64_t, std::uint64_t>& followers() const {
    return follower_x_;
  }
  const std::map<std::uint64_t, FrozenFn>& released() const { return released_; }
  const std::vector<StageEvent>& events() const { return events_; }

  // Finite table of an even code at the current stage (frozen content, or
  // the active follower's present view).
  std::map<std::uint64_t, Nat> materialize_even(std::uint64_t x);

  // Test hook: clone a frozen entry under a fresh even code, deliberately
  // breaking the pairwise-distinctness invariant.
  void inject_frozen_duplicate_for_test(std::uint64_t src_x);

 private:
  struct RunRec {
    enum class St { Halts, Never, Unknown } st = St::Unknown;
    Fuel t_eff = 0;  // max(exact halt step count, m+1)
    Nat value;
  };
  struct PhiInfo {
    std::vector<RunRec> runs;  // indexed by input m
    std::uint64_t dom_count = 0;
    std::map<Fuel, std::vector<std::uint64_t>> pending;  // t_eff → inputs
  };
  struct Follower {
    std::uint64_t e = 0, x = 0, appointed_at = 0;
    std::uint64_t next_r1 = kNever, next_r3 = kNever;
  };
  static constexpr std::uint64_t kNever = ~0ull;

  void process_stage(std::uint64_t s);
  PhiInfo& phi(std::uint64_t e);
  const RunRec& status(std::uint64_t e, std::uint64_t m);
  void ensure_evaluated(std::uint64_t e, std::uint64_t upto);
  std::uint64_t dom_count(std::uint64_t e);
  void drain_pending(std::uint64_t e);
  bool view_defined(std::uint64_t e, std::uint64_t m, std::uint64_t s);
  std::map<std::uint64_t, Nat> view(std::uint64_t e, std::uint64_t s);
  std::uint64_t rule1_next(std::uint64_t e, std::uint64_t x,
                           std::uint64_t appointed_at);
  std::uint64_t rule3_next(std::uint64_t e, std::uint64_t x,
                           std::uint64_t appointed_at);
  bool rule2_fires(std::uint64_t e, std::uint64_t s, std::uint64_t* match_x);
  void release_now(const Follower& f, int rule, std::uint64_t s,
                   std::uint64_t rule2_match);
  void raise_cap(std::uint64_t need);

  SimConfig cfg_;
  std::uint64_t stage_ = 0;  // stages 1..stage_ have been processed
  std::map<std::uint64_t, PhiInfo> phi_;
  std::map<std::uint64_t, Follower> followers_;       // by owner e
  std::map<std::uint64_t, std::uint64_t> follower_x_;  // e → x (mirror)
  std::map<std::uint64_t, FrozenFn> released_;         // by x
  std::multimap<std::uint64_t, std::uint64_t> frozen_sizes_;  // size → x
  std::map<std::uint64_t, std::uint64_t> appointed_at_x_;     // x → stage
  std::map<std::uint64_t, std::uint64_t> owner_of_x_;         // x → e
  std::uint64_t next_even_ = 2;
  std::vector<StageEvent> events_;
};

// ψ as a model: elements intern the codes/values.
class PsiModel final : public Model {
 public:
  explicit PsiModel(Sim& sim) : sim_(sim) {}

  Element from_nat(const Nat& n);
  const Nat& nat_of(Element e) const;

  std::string name() const override { return "psi"; }
  EvalOutcome apply(Element a, Element b, Fuel fuel) override;
  std::string show(Element e) const override;
  std::optional<Element> resolve(const std::string& name) override;

  Sim& sim() { return sim_; }

 private:
  Sim& sim_;
  std::vector<Nat> nats_;
  std::map<Nat, Element> handles_;
};

// Shows that `sigma` cannot serve as an s combinator for ψ: scans a
// deterministic pool of triples for a law violation, then sketches the
// textbook construction as far as it goes.
Witness refute_s_candidate(Sim& sim, PsiModel& model, const Nat& sigma,
                           Fuel stage_budget, std::uint64_t seed);

}  // namespace pca::fb
