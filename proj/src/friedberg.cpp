#include "pca/friedberg.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "pca/errors.hpp"
#include "pca/k1.hpp"

namespace pca::fb {

Sim::Sim(SimConfig cfg) : cfg_(cfg) {}

Sim::PhiInfo& Sim::phi(std::uint64_t e) { return phi_[e]; }

void Sim::ensure_evaluated(std::uint64_t e, std::uint64_t upto) {
  PhiInfo& pi = phi_[e];
  while (pi.runs.size() < upto) {
    std::uint64_t m = pi.runs.size();
    RunRec rec;
    Outcome<Nat> o = k1::run(Nat((unsigned long)e), Nat((unsigned long)m),
                             cfg_.run_cap);
    if (o.is_defined()) {
      rec.st = RunRec::St::Halts;
      rec.t_eff = std::max<Fuel>(o.spent(), m + 1);
      rec.value = o.value();
      if (rec.t_eff <= stage_)
        ++pi.dom_count;
      else
        pi.pending[rec.t_eff].push_back(m);
    } else if (o.kind() == OutcomeKind::ProvenDivergent) {
      rec.st = RunRec::St::Never;
    } else {
      rec.st = RunRec::St::Unknown;
    }
    pi.runs.push_back(std::move(rec));
  }
}

const Sim::RunRec& Sim::status(std::uint64_t e, std::uint64_t m) {
  ensure_evaluated(e, m + 1);
  return phi_[e].runs[m];
}

void Sim::drain_pending(std::uint64_t e) {
  PhiInfo& pi = phi_[e];
  while (!pi.pending.empty() && pi.pending.begin()->first <= stage_) {
    pi.dom_count += pi.pending.begin()->second.size();
    pi.pending.erase(pi.pending.begin());
  }
}

std::uint64_t Sim::dom_count(std::uint64_t e) {
  ensure_evaluated(e, stage_);
  drain_pending(e);
  return phi_[e].dom_count;
}

bool Sim::view_defined(std::uint64_t e, std::uint64_t m, std::uint64_t s) {
  if (m >= s) return false;
  const RunRec& r = status(e, m);
  return r.st == RunRec::St::Halts && r.t_eff <= s;
}

std::map<std::uint64_t, Nat> Sim::view(std::uint64_t e, std::uint64_t s) {
  ensure_evaluated(e, s);
  std::map<std::uint64_t, Nat> out;
  const PhiInfo& pi = phi_[e];
  for (std::uint64_t m = 0; m < s && m < pi.runs.size(); ++m) {
    const RunRec& r = pi.runs[m];
    if (r.st == RunRec::St::Halts && r.t_eff <= s) out.emplace(m, r.value);
  }
  return out;
}

std::uint64_t Sim::rule1_next(std::uint64_t e, std::uint64_t x,
                              std::uint64_t appointed_at) {
  // For each lower-priority program, the stages where the two staged views
  // restricted below x coincide form a closed-form set: each input either
  // caps the agreement (one side halts, or values differ) or forbids an
  // interval (both halt equally: between the two halt times exactly one
  // side shows the value).
  std::uint64_t best = kNever;
  ensure_evaluated(e, x);
  for (std::uint64_t i = 0; i < e; ++i) {
    ensure_evaluated(i, x);
    std::uint64_t upper = kNever;
    std::vector<std::pair<Fuel, Fuel>> forbidden;
    for (std::uint64_t m = 0; m < x; ++m) {
      const RunRec& a = phi_[i].runs[m];
      const RunRec& b = phi_[e].runs[m];
      bool ha = a.st == RunRec::St::Halts, hb = b.st == RunRec::St::Halts;
      if (!ha && !hb) continue;
      if (ha && hb) {
        Fuel lo = std::min(a.t_eff, b.t_eff);
        Fuel hi = std::max(a.t_eff, b.t_eff);
        if (a.value == b.value) {
          if (lo < hi) forbidden.emplace_back(lo, hi);
        } else {
          upper = std::min<std::uint64_t>(upper, lo);
        }
      } else {
        upper = std::min<std::uint64_t>(upper, ha ? a.t_eff : b.t_eff);
      }
    }
    std::sort(forbidden.begin(), forbidden.end());
    std::uint64_t s = appointed_at + 1;
    for (const auto& [lo, hi] : forbidden) {
      if (s < lo) break;
      if (s < hi) s = hi;
    }
    if (s < upper) best = std::min(best, s);
  }
  return best;
}

std::uint64_t Sim::rule3_next(std::uint64_t e, std::uint64_t x,
                              std::uint64_t appointed_at) {
  ensure_evaluated(e, x);
  Fuel max_t = 0;
  const Nat* first = nullptr;
  for (std::uint64_t m = 0; m < x; ++m) {
    const RunRec& r = phi_[e].runs[m];
    if (r.st != RunRec::St::Halts) return kNever;
    max_t = std::max(max_t, r.t_eff);
    if (!first)
      first = &r.value;
    else if (*first != r.value)
      return kNever;
  }
  return std::max<std::uint64_t>(max_t, appointed_at + 1);
}

bool Sim::rule2_fires(std::uint64_t e, std::uint64_t s, std::uint64_t* match_x) {
  std::uint64_t sz = dom_count(e);
  if (sz == 0) return false;
  auto range = frozen_sizes_.equal_range(sz);
  for (auto it = range.first; it != range.second; ++it) {
    const FrozenFn& g = released_.at(it->second);
    bool eq = true;
    for (const auto& [m, v] : g.base)
      if (!view_defined(e, m, s) || phi_[e].runs[m].value != v) {
        eq = false;
        break;
      }
    if (eq)
      for (const auto& [m, v] : g.patch)
        if (!view_defined(e, m, s) || phi_[e].runs[m].value != v) {
          eq = false;
          break;
        }
    if (eq) {  // equal sizes plus containment = equality
      *match_x = it->second;
      return true;
    }
  }
  return false;
}

void Sim::release_now(const Follower& fref, int rule, std::uint64_t s,
                      std::uint64_t rule2_match) {
  Follower f = fref;  // survive the erase below
  FrozenFn fz;
  fz.owner_e = f.e;
  fz.x = f.x;
  fz.release_stage = s;
  fz.rule = rule;
  fz.base = view(f.e, s);

  auto defined_in = [&](std::uint64_t p) {
    return fz.base.count(p) != 0 || fz.patch.count(p) != 0;
  };
  auto value_at = [&](std::uint64_t p) -> const Nat& {
    auto it = fz.patch.find(p);
    return it != fz.patch.end() ? it->second : fz.base.at(p);
  };
  auto flip = [](const Nat& v) { return v == 0 ? Nat(1) : Nat(0); };
  std::ostringstream note;

  // Distinctness augmentation, deterministic least-choice throughout: first
  // disagree with every frozen entry we do not already disagree with, then
  // with every other active view, then add a fresh point that also makes the
  // entry nonconstant.
  for (const auto& [x2, g] : released_) {
    bool disagree = false;
    for (const auto* part : {&g.base, &g.patch}) {
      for (const auto& [m, v] : *part)
        if (defined_in(m) && value_at(m) != v) {
          disagree = true;
          break;
        }
      if (disagree) break;
    }
    if (disagree) continue;
    std::optional<std::uint64_t> pt;
    const Nat* pv = nullptr;
    for (const auto* part : {&g.base, &g.patch})
      for (const auto& [m, v] : *part)
        if (!defined_in(m) && (!pt || m < *pt)) {
          pt = m;
          pv = &v;
        }
    if (pt)
      fz.patch.emplace(*pt, flip(*pv));
    else
      note << "subsumes frozen " << x2 << "; ";
  }
  for (const auto& [e2, f2] : followers_) {
    if (e2 == f.e) continue;
    auto v2 = view(f2.e, s);
    bool disagree = false;
    for (const auto& [m, v] : v2)
      if (defined_in(m) && value_at(m) != v) {
        disagree = true;
        break;
      }
    if (disagree) continue;
    bool patched = false;
    for (const auto& [m, v] : v2)
      if (!defined_in(m)) {
        fz.patch.emplace(m, flip(v));
        patched = true;
        break;
      }
    if (!patched && !v2.empty()) note << "covers active view of " << e2 << "; ";
  }
  {
    std::uint64_t p = 0;
    for (;;) {
      bool used = defined_in(p);
      if (!used)
        for (const auto& [x2, g] : released_)
          if (g.base.count(p) || g.patch.count(p)) {
            used = true;
            break;
          }
      if (!used)
        for (const auto& [e2, f2] : followers_) {
          if (e2 == f.e) continue;
          if (view_defined(f2.e, p, s)) {
            used = true;
            break;
          }
        }
      if (!used) break;
      ++p;
    }
    bool constant = true;
    const Nat* cval = nullptr;
    for (const auto* part : {&fz.base, &fz.patch})
      for (const auto& [m, v] : *part) {
        if (!cval)
          cval = &v;
        else if (*cval != v)
          constant = false;
      }
    Nat w = (cval && constant) ? Nat(*cval + 1) : Nat(0);
    fz.patch.emplace(p, w);
    note << "fresh point " << p;
  }
  fz.note = note.str();

  StageEvent ev;
  ev.kind = StageEvent::Kind::Release;
  ev.stage = s;
  ev.rule = rule;
  ev.e = f.e;
  ev.x = f.x;
  {
    std::ostringstream d;
    d << "released by rule " << rule;
    if (rule == 2) d << " (matched frozen " << rule2_match << ")";
    d << "; " << fz.note;
    ev.detail = d.str();
  }
  events_.push_back(std::move(ev));

  frozen_sizes_.emplace(fz.base.size() + fz.patch.size(), f.x);
  released_.emplace(f.x, std::move(fz));
  followers_.erase(f.e);
  follower_x_.erase(f.e);
}

void Sim::process_stage(std::uint64_t s) {
  stage_ = s;

  // Releases first, in priority order.
  std::vector<std::uint64_t> owners;
  owners.reserve(followers_.size());
  for (const auto& [e, f] : followers_) owners.push_back(e);
  for (std::uint64_t e : owners) {
    auto it = followers_.find(e);
    if (it == followers_.end()) continue;
    Follower& f = it->second;
    ensure_evaluated(e, s);
    int rule = 0;
    std::uint64_t match = 0;
    if (f.next_r1 <= s)
      rule = 1;
    else if (rule2_fires(e, s, &match))
      rule = 2;
    else if (f.next_r3 <= s)
      rule = 3;
    if (rule) release_now(f, rule, s, match);
  }

  // Then at most one appointment: the stage's own program index, if it shows
  // a nonempty staged view and has no active follower.
  std::uint64_t owner = to_u64(cantor_unpair(Nat((unsigned long)s)).first);
  if (!followers_.count(owner) && dom_count(owner) >= 1) {
    Follower f;
    f.e = owner;
    f.x = next_even_;
    next_even_ += 2;
    f.appointed_at = s;
    f.next_r1 = rule1_next(owner, f.x, s);
    f.next_r3 = rule3_next(owner, f.x, s);
    followers_[owner] = f;
    follower_x_[owner] = f.x;
    appointed_at_x_[f.x] = s;
    owner_of_x_[f.x] = owner;

    StageEvent ev;
    ev.kind = StageEvent::Kind::Appoint;
    ev.stage = s;
    ev.e = owner;
    ev.x = f.x;
    ev.detail = "follower appointed";
    events_.push_back(std::move(ev));
  }
}

void Sim::raise_cap(std::uint64_t need) {
  while (cfg_.run_cap < need) cfg_.run_cap *= 2;
  // Re-run every undecided input at the new cap, then refresh the release
  // schedules (new halts only ever concern stages beyond those processed).
  for (auto& [e, pi] : phi_) {
    for (std::uint64_t m = 0; m < pi.runs.size(); ++m) {
      RunRec& rec = pi.runs[m];
      if (rec.st != RunRec::St::Unknown) continue;
      Outcome<Nat> o = k1::run(Nat((unsigned long)e), Nat((unsigned long)m),
                               cfg_.run_cap);
      if (o.is_defined()) {
        rec.st = RunRec::St::Halts;
        rec.t_eff = std::max<Fuel>(o.spent(), m + 1);
        rec.value = o.value();
        if (rec.t_eff <= stage_)
          ++pi.dom_count;
        else
          pi.pending[rec.t_eff].push_back(m);
      } else if (o.kind() == OutcomeKind::ProvenDivergent) {
        rec.st = RunRec::St::Never;
      }
    }
  }
  for (auto& [e, f] : followers_) {
    f.next_r1 = rule1_next(e, f.x, f.appointed_at);
    f.next_r3 = rule3_next(e, f.x, f.appointed_at);
  }
}

void Sim::advance_to(std::uint64_t stage) {
  if (stage > cfg_.run_cap) raise_cap(stage);
  while (stage_ < stage) process_stage(stage_ + 1);
}

Outcome<Nat> Sim::psi_apply(const Nat& code, const Nat& input,
                            Fuel stage_budget) {
  if (code == 0) return Outcome<Nat>::exhausted(stage_budget);
  if (mpz_odd_p(code.get_mpz_t()))
    return Outcome<Nat>::defined((code - 1) / 2, 0);
  if (!fits_u64(code)) return Outcome<Nat>::exhausted(stage_budget);
  std::uint64_t x = to_u64(code);

  if (stage_budget > stage_) advance_to(stage_budget);

  auto ita = appointed_at_x_.find(x);
  if (ita == appointed_at_x_.end() || ita->second > stage_budget)
    return Outcome<Nat>::exhausted(stage_budget);

  auto itr = released_.find(x);
  if (itr != released_.end() && itr->second.release_stage <= stage_budget) {
    const FrozenFn& g = itr->second;
    if (fits_u64(input)) {
      std::uint64_t m = to_u64(input);
      auto ip = g.patch.find(m);
      if (ip != g.patch.end()) return Outcome<Nat>::defined(ip->second, 0);
      auto ib = g.base.find(m);
      if (ib != g.base.end()) return Outcome<Nat>::defined(ib->second, 0);
    }
    // Frozen content is final: a missing point stays missing.
    return Outcome<Nat>::diverged(stage_budget);
  }

  if (!fits_u64(input)) return Outcome<Nat>::exhausted(stage_budget);
  std::uint64_t m = to_u64(input);
  if (m >= stage_budget) return Outcome<Nat>::exhausted(stage_budget);
  std::uint64_t e = owner_of_x_.at(x);
  const RunRec& r = status(e, m);
  if (r.st == RunRec::St::Halts && r.t_eff <= stage_budget)
    return Outcome<Nat>::defined(r.value, r.t_eff);
  return Outcome<Nat>::exhausted(stage_budget);
}

Sim::Invariants Sim::check_invariants() {
  Invariants inv;
  auto bad = [&](const std::string& msg) {
    inv.ok = false;
    inv.violations.push_back(msg);
  };

  // Follower bookkeeping: even codes, one per program, never also frozen.
  std::set<std::uint64_t> seen_x;
  for (const auto& [e, f] : followers_) {
    if (f.e != e || follower_x_.at(e) != f.x) bad("follower mirror out of sync");
    if (f.x % 2 != 0 || f.x == 0)
      bad("follower code " + std::to_string(f.x) + " is not a positive even");
    if (!seen_x.insert(f.x).second)
      bad("follower code " + std::to_string(f.x) + " appointed twice");
    if (released_.count(f.x))
      bad("follower code " + std::to_string(f.x) + " is both active and frozen");
  }

  // Frozen entries: nonempty, nonconstant, pairwise incompatible.
  std::vector<std::pair<std::uint64_t, std::map<std::uint64_t, Nat>>> frozen;
  for (const auto& [x, g] : released_) {
    auto merged = g.base;
    for (const auto& [m, v] : g.patch) merged[m] = v;
    if (merged.empty()) bad("frozen " + std::to_string(x) + " is empty");
    bool nonconst = false;
    for (const auto& [m, v] : merged)
      if (v != merged.begin()->second) nonconst = true;
    if (!nonconst)
      bad("frozen " + std::to_string(x) + " is constant, duplicating an odd code");
    frozen.emplace_back(x, std::move(merged));
  }
  for (std::size_t i = 0; i < frozen.size(); ++i)
    for (std::size_t j = i + 1; j < frozen.size(); ++j) {
      const auto& fi = frozen[i].second;
      const auto& fj = frozen[j].second;
      bool disagree = false, i_in_j = true, j_in_i = true;
      for (const auto& [m, v] : fi) {
        auto it = fj.find(m);
        if (it == fj.end())
          i_in_j = false;
        else if (it->second != v)
          disagree = true;
      }
      for (const auto& [m, v] : fj)
        if (!fi.count(m)) j_in_i = false;
      if (!(disagree || (!i_in_j && !j_in_i)))
        bad("frozen " + std::to_string(frozen[i].first) + " and " +
            std::to_string(frozen[j].first) + " are compatible");
    }

  // Active views must reproduce independent staged runs on sampled inputs.
  for (const auto& [e, f] : followers_) {
    for (std::uint64_t m :
         {std::uint64_t(0), std::uint64_t(1), f.x, stage_ / 2,
          stage_ ? stage_ - 1 : 0}) {
      if (m >= stage_) continue;
      Outcome<Nat> ind =
          k1::run(Nat((unsigned long)e), Nat((unsigned long)m), stage_);
      Outcome<Nat> got =
          psi_apply(Nat((unsigned long)f.x), Nat((unsigned long)m), stage_);
      bool expect_def =
          ind.is_defined() && std::max<Fuel>(ind.spent(), m + 1) <= stage_;
      if (expect_def != got.is_defined() ||
          (expect_def && ind.value() != got.value()))
        bad("active view of " + std::to_string(f.x) +
            " disagrees with a direct staged run at input " + std::to_string(m));
    }
  }

  // Structural: even codes only, and at most one appointment per stage.
  for (const auto& [x, st] : appointed_at_x_)
    if (x % 2 != 0 || x == 0) bad("appointed code is not a positive even");
  std::map<std::uint64_t, int> per_stage;
  for (const auto& ev : events_)
    if (ev.kind == StageEvent::Kind::Appoint &&
        ++per_stage[ev.stage] > 1)
      bad("two appointments at stage " + std::to_string(ev.stage));

  return inv;
}

std::map<std::uint64_t, Nat> Sim::materialize_even(std::uint64_t x) {
  auto itr = released_.find(x);
  if (itr != released_.end()) {
    auto merged = itr->second.base;
    for (const auto& [m, v] : itr->second.patch) merged[m] = v;
    return merged;
  }
  auto ito = owner_of_x_.find(x);
  if (ito == owner_of_x_.end())
    throw PcaError("even code " + std::to_string(x) + " was never appointed");
  return view(ito->second, stage_);
}

void Sim::inject_frozen_duplicate_for_test(std::uint64_t src_x) {
  const FrozenFn& g = released_.at(src_x);
  FrozenFn copy = g;
  copy.x = next_even_;
  next_even_ += 2;
  copy.note += " (injected duplicate)";
  appointed_at_x_[copy.x] = stage_;
  owner_of_x_[copy.x] = g.owner_e;
  frozen_sizes_.emplace(copy.base.size() + copy.patch.size(), copy.x);
  released_.emplace(copy.x, std::move(copy));
}

Sim::KReport Sim::find_k(std::uint64_t stage_budget, std::size_t samples,
                         std::uint64_t seed) {
  advance_to(stage_budget);
  KReport rep;
  std::uint64_t e_star = to_u64(k1::double_plus_one_code());
  auto it = follower_x_.find(e_star);
  if (it == follower_x_.end()) {
    for (const auto& [x, g] : released_)
      if (g.owner_e == e_star) {
        rep.detail = "follower " + std::to_string(x) +
                     " was released by rule " + std::to_string(g.rule) +
                     " at stage " + std::to_string(g.release_stage);
        return rep;
      }
    rep.detail = "no follower appointed within the stage budget";
    return rep;
  }
  rep.code = it->second;
  rep.appointed_at = appointed_at_x_.at(rep.code);

  std::mt19937_64 rng(seed);
  bool all_ok = true;
  for (std::size_t j = 0; j < samples; ++j) {
    KSample smp;
    smp.a = Nat((unsigned long)(j < 10 ? j : rng() % 200));
    Outcome<Nat> o1 =
        psi_apply(Nat((unsigned long)rep.code), smp.a, stage_budget);
    if (!o1.is_defined() || o1.value() != smp.a * 2 + 1) {
      all_ok = false;
      rep.detail = "image of " + smp.a.get_str() + " is not the odd code of "
                   "the constant returning it";
      break;
    }
    smp.image = o1.value();
    smp.b = Nat((unsigned long)(rng() % 1000));
    Outcome<Nat> o2 = psi_apply(smp.image, smp.b, stage_budget);
    if (!o2.is_defined() || o2.value() != smp.a) {
      all_ok = false;
      rep.detail = "constant code " + smp.image.get_str() +
                   " failed to return " + smp.a.get_str();
      break;
    }
    smp.roundtrip = o2.value();
    rep.samples.push_back(std::move(smp));
  }
  rep.found = all_ok;
  if (all_ok)
    rep.detail = "follower of the doubling-successor program, behaving as k "
                 "on all samples";
  return rep;
}

Element PsiModel::from_nat(const Nat& n) {
  auto it = handles_.find(n);
  if (it != handles_.end()) return it->second;
  Element e = (Element)nats_.size();
  nats_.push_back(n);
  handles_.emplace(n, e);
  return e;
}

const Nat& PsiModel::nat_of(Element e) const {
  if (e >= nats_.size()) throw PcaError("psi model: unknown element handle");
  return nats_[e];
}

EvalOutcome PsiModel::apply(Element a, Element b, Fuel fuel) {
  Outcome<Nat> o = sim_.psi_apply(nat_of(a), nat_of(b), fuel);
  switch (o.kind()) {
    case OutcomeKind::Defined:
      return EvalOutcome::defined(from_nat(o.value()), o.spent());
    case OutcomeKind::ProvenDivergent:
      return EvalOutcome::diverged(o.spent());
    case OutcomeKind::FuelExhausted:
      return EvalOutcome::exhausted(o.spent());
  }
  throw PcaError("psi model: unreachable outcome kind");
}

std::string PsiModel::show(Element e) const { return nat_brief(nat_of(e)); }

std::optional<Element> PsiModel::resolve(const std::string& name) {
  if (name.empty() ||
      name.find_first_not_of("0123456789") != std::string::npos)
    return std::nullopt;
  return from_nat(Nat(name));
}

Witness refute_s_candidate(Sim& sim, PsiModel& model, const Nat& sigma,
                           Fuel stage_budget, std::uint64_t seed) {
  sim.advance_to(stage_budget);

  Witness w;
  w.kind = "s-candidate";
  Element sig = model.from_nat(sigma);
  w.offenders = {sig};

  // Probe triples: a fixed head that catches the canonical failure shapes
  // (odd constants, code 0, the extracted k element), then seeded fill.
  std::vector<std::array<Nat, 3>> pool = {
      {Nat(1), Nat(3), Nat(1)}, {Nat(3), Nat(3), Nat(3)},
      {Nat(7), Nat(3), Nat(3)}, {Nat(3), Nat(7), Nat(3)},
      {Nat(5), Nat(3), Nat(9)}, {Nat(2), Nat(5), Nat(9)},
      {Nat(2), Nat(7), Nat(4)}};
  {
    std::uint64_t e_star = to_u64(k1::double_plus_one_code());
    auto it = sim.followers().find(e_star);
    if (it != sim.followers().end()) {
      Nat x69((unsigned long)it->second);
      pool.push_back({x69, Nat(3), Nat(1)});
      pool.push_back({Nat(1), x69, Nat(3)});
    }
  }
  std::mt19937_64 rng(seed);
  for (int j = 0; j < 8; ++j)
    pool.push_back({Nat((unsigned long)(2 * (rng() % 30) + 1)),
                    Nat((unsigned long)(2 * (rng() % 30) + 1)),
                    Nat((unsigned long)(rng() % 20))});

  auto reason = [&](const Nat& applied_code, const AppRecord& rec) {
    if (applied_code == 0)
      return std::string("the applied entry is code 0, empty at every stage");
    if (rec.kind == OutcomeKind::ProvenDivergent)
      return std::string(
          "the applied entry is frozen and provably lacks the point");
    return std::string("no value within the stage budget");
  };

  for (const auto& [a, b, c] : pool) {
    std::vector<AppRecord> t;
    Element ae = model.from_nat(a), be = model.from_nat(b),
            ce2 = model.from_nat(c);

    AppRecord ra = record_apply(model, sig, ae, stage_budget, "s a");
    t.push_back(ra);
    if (ra.kind != OutcomeKind::Defined) {
      w.transcript = t;
      w.clause = "the law requires s·a to be defined for every a; here " +
                 reason(sigma, ra);
      return w;
    }
    AppRecord rab =
        record_apply(model, *ra.value, be, stage_budget, "(s a) b");
    t.push_back(rab);
    if (rab.kind != OutcomeKind::Defined) {
      w.transcript = t;
      w.clause = "the law requires s·a·b to be defined for every a, b; here " +
                 reason(model.nat_of(*ra.value), rab);
      return w;
    }
    AppRecord rl =
        record_apply(model, *rab.value, ce2, stage_budget, "((s a) b) c");
    t.push_back(rl);
    AppRecord rac = record_apply(model, ae, ce2, stage_budget, "a c");
    t.push_back(rac);
    AppRecord rbc = record_apply(model, be, ce2, stage_budget, "b c");
    t.push_back(rbc);

    bool lhs_def = rl.kind == OutcomeKind::Defined;
    std::optional<AppRecord> rr;
    if (rac.kind == OutcomeKind::Defined && rbc.kind == OutcomeKind::Defined) {
      rr = record_apply(model, *rac.value, *rbc.value, stage_budget,
                        "(a c)(b c)");
      t.push_back(*rr);
    }
    bool rhs_def = rr && rr->kind == OutcomeKind::Defined;

    if (lhs_def && rhs_def && *rl.value != *rr->value) {
      w.transcript = t;
      w.clause = "law violated: s·a·b·c and (a·c)(b·c) are both defined with "
                 "different values";
      return w;
    }
    if (lhs_def && !rhs_def) {
      w.transcript = t;
      std::string why;
      if (rac.kind != OutcomeKind::Defined)
        why = "a·c is undefined (" + reason(a, rac) + ")";
      else if (rbc.kind != OutcomeKind::Defined)
        why = "b·c is undefined (" + reason(b, rbc) + ")";
      else
        why = "(a·c)(b·c) is undefined (" +
              reason(model.nat_of(*rac.value), *rr) + ")";
      w.clause = "law violated: s·a·b·c is defined but the right-hand side is "
                 "not: " + why;
      return w;
    }
    if (!lhs_def && rhs_def) {
      w.transcript = t;
      w.clause = "law violated: (a·c)(b·c) is defined but s·a·b·c is not (" +
                 reason(model.nat_of(*rab.value), rl) + ")";
      return w;
    }
    // Both sides undefined: the law holds on this triple; try the next.
  }

  w.clause = "no violation surfaced within the stage budget across the probe "
             "triples";
  return w;
}

}  // namespace pca::fb
