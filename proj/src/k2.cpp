#include "pca/k2.hpp"

#include <sstream>

#include "pca/errors.hpp"

namespace pca::k2 {

namespace {

std::string csv(const std::vector<Nat>& xs) {
  std::string out;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (j) out += ",";
    out += xs[j].get_str();
  }
  return out;
}

}  // namespace

Element K2Model::intern(const std::string& key, K2Desc d) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = interned_.find(key);
  if (it != interned_.end()) return it->second;
  Element e = (Element)descs_.size();
  descs_.push_back(std::move(d));
  interned_.emplace(key, e);
  return e;
}

Element K2Model::periodic(std::vector<Nat> prefix, std::vector<Nat> period) {
  if (period.empty()) throw PcaError("k2: periodic part must be nonempty");
  K2Desc d;
  d.kind = K2Desc::Kind::Periodic;
  d.prefix = std::move(prefix);
  d.period = std::move(period);
  std::string key = "p:" + csv(d.prefix) + "|" + csv(d.period);
  return intern(key, std::move(d));
}

void K2Model::check_rule_consistency(const std::string& name,
                                     const RuleFn& fn) const {
  // Sampled invariant: once a rule answers on a prefix, every sampled
  // extension that still answers must give the same value (read-loops stop at
  // the first answer, so a changed mind would be unreachable — reject it).
  for (int n = 0; n <= 2; ++n) {
    std::vector<Nat> p;
    std::function<void(std::optional<Nat>)> dfs = [&](std::optional<Nat> seen) {
      RuleReply r = fn(Nat(n), p);
      if (r.kind == RuleReply::Kind::Reject) return;
      if (r.kind == RuleReply::Kind::Answer) {
        if (seen && *seen != r.value)
          throw PcaError("k2 rule '" + name +
                         "' answers inconsistently on a prefix extension");
        seen = r.value;
      }
      if (p.size() >= 4) return;
      for (int bit = 0; bit <= 1; ++bit) {
        p.emplace_back(bit);
        dfs(seen);
        p.pop_back();
      }
    };
    dfs(std::nullopt);
  }
}

Element K2Model::rule_element(const std::string& name, RuleFn fn) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = interned_.find("r:" + name);
    if (it != interned_.end()) return it->second;
  }
  check_rule_consistency(name, fn);
  K2Desc d;
  d.kind = K2Desc::Kind::Rule;
  d.rule_name = name;
  d.rule = std::move(fn);
  return intern("r:" + name, std::move(d));
}

Element K2Model::applied(Element a, Element b) {
  desc(a);
  desc(b);  // range checks
  K2Desc d;
  d.kind = K2Desc::Kind::Applied;
  d.a = a;
  d.b = b;
  return intern("a:" + std::to_string(a) + ":" + std::to_string(b),
                std::move(d));
}

Element K2Model::all_zeros() { return periodic({}, {Nat(0)}); }
Element K2Model::all_ones() { return periodic({}, {Nat(1)}); }

const K2Desc& K2Model::desc(Element e) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (e >= descs_.size()) throw PcaError("k2: unknown element handle");
  return descs_[e];
}

Outcome<Nat> K2Model::coord_impl(Element x, const Nat& i, Fuel& pool,
                                 std::vector<Nat>* reads, int depth) {
  if (depth > 1000) throw PcaError("k2: application nesting too deep");
  const K2Desc& d = desc(x);

  switch (d.kind) {
    case K2Desc::Kind::Periodic: {
      if (i < Nat((unsigned long)d.prefix.size()))
        return Outcome<Nat>::defined(d.prefix[to_u64(i)], 0);
      Nat off = i - Nat((unsigned long)d.prefix.size());
      unsigned long r = mpz_fdiv_ui(off.get_mpz_t(), d.period.size());
      return Outcome<Nat>::defined(d.period[r], 0);
    }
    case K2Desc::Kind::Rule: {
      // The rule seen as a plain sequence: position i decodes to a query
      // (output coordinate, prefix); answers are shifted up by one so that 0
      // means "keep reading".
      auto [n, pc] = cantor_unpair(i);
      RuleReply r = d.rule(n, seq_decode(pc));
      if (r.kind == RuleReply::Kind::Answer)
        return Outcome<Nat>::defined(r.value + 1, 0);
      return Outcome<Nat>::defined(Nat(0), 0);
    }
    case K2Desc::Kind::Applied: {
      const K2Desc& da = desc(d.a);
      std::vector<Nat> pfx;
      for (;;) {
        if (pool == 0) return Outcome<Nat>::exhausted(0);
        --pool;  // one operator consultation
        if (da.kind == K2Desc::Kind::Rule) {
          RuleReply r = da.rule(i, pfx);
          if (r.kind == RuleReply::Kind::Reject)
            return Outcome<Nat>::diverged(0);
          if (r.kind == RuleReply::Kind::Answer)
            return Outcome<Nat>::defined(r.value, 0);
        } else {
          auto va = coord_impl(d.a, query_code(i, pfx), pool, nullptr, depth + 1);
          if (!va.is_defined()) return va;
          if (va.value() > 0) return Outcome<Nat>::defined(va.value() - 1, 0);
        }
        Nat pos((unsigned long)pfx.size());
        auto vb = coord_impl(d.b, pos, pool, nullptr, depth + 1);
        if (!vb.is_defined()) return vb;
        if (reads) reads->push_back(pos);
        pfx.push_back(vb.value());
      }
    }
  }
  throw PcaError("k2: unreachable descriptor kind");
}

Outcome<Nat> K2Model::coord(Element x, const Nat& i, Fuel fuel,
                            std::vector<Nat>* reads, Fuel* queries) {
  Fuel pool = fuel;
  Outcome<Nat> o = coord_impl(x, i, pool, reads, 0);
  Fuel used = fuel - pool;
  if (queries) *queries += used;
  switch (o.kind()) {
    case OutcomeKind::Defined:
      return Outcome<Nat>::defined(o.value(), used);
    case OutcomeKind::ProvenDivergent:
      return Outcome<Nat>::diverged(used);
    case OutcomeKind::FuelExhausted:
      return Outcome<Nat>::exhausted(used);
  }
  throw PcaError("k2: unreachable outcome kind");
}

EvalOutcome K2Model::apply(Element a, Element b, Fuel fuel) {
  Element r = applied(a, b);
  // Definedness is probed at coordinate 0; the element itself stays lazy.
  Outcome<Nat> o = coord(r, 0, fuel);
  switch (o.kind()) {
    case OutcomeKind::Defined:
      return EvalOutcome::defined(r, o.spent());
    case OutcomeKind::ProvenDivergent:
      return EvalOutcome::diverged(o.spent());
    case OutcomeKind::FuelExhausted:
      return EvalOutcome::exhausted(o.spent());
  }
  throw PcaError("k2: unreachable outcome kind");
}

std::string K2Model::show(Element e) const {
  const K2Desc& d = desc(e);
  switch (d.kind) {
    case K2Desc::Kind::Periodic: {
      std::ostringstream os;
      os << "[";
      for (const Nat& v : d.prefix) os << nat_brief(v) << " ";
      os << "| ";
      for (const Nat& v : d.period) os << nat_brief(v) << " ";
      os << "...]";
      return os.str();
    }
    case K2Desc::Kind::Rule:
      return "rule:" + d.rule_name;
    case K2Desc::Kind::Applied:
      return "(" + show(d.a) + "*" + show(d.b) + ")";
  }
  return "?";
}

std::optional<std::pair<Element, Element>> K2Model::divergent_pair() {
  K2Model* self = const_cast<K2Model*>(this);
  auto [f, g] = make_counterexample_pair(*self);
  (void)g;
  // The copier rejects as soon as it reads a 1.
  return std::make_pair(f, self->all_ones());
}

std::optional<Element> K2Model::resolve(const std::string& name) {
  if (name == "zeros") return all_zeros();
  if (name == "ones") return all_ones();
  if (name == "alpha-hat") return make_counterexample_pair(*this).first;
  if (name == "beta-hat") return make_counterexample_pair(*this).second;
  return std::nullopt;
}

std::optional<Outcome<Nat>> K2Model::coord_apply(Element a, Element b,
                                                 const Nat& coord_index,
                                                 Fuel fuel) {
  return coord(applied(a, b), coord_index, fuel);
}

K2ApplyResult k2_apply(K2Model& m, Element a, Element b, std::size_t coords,
                       Fuel fuel) {
  K2ApplyResult res;
  res.result = m.applied(a, b);
  for (std::size_t i = 0; i < coords; ++i) {
    std::vector<Nat> reads;
    Outcome<Nat> o = m.coord(res.result, Nat((unsigned long)i), fuel, &reads,
                             &res.queries);
    if (!o.is_defined()) {
      res.stop = o.kind();
      return res;
    }
    res.values.push_back(o.value());
    res.reads.push_back(std::move(reads));
  }
  res.stop = OutcomeKind::Defined;
  return res;
}

std::pair<Element, Element> make_counterexample_pair(K2Model& m) {
  Element f = m.rule_element(
      "alpha-hat", [](const Nat& n, const std::vector<Nat>& p) -> RuleReply {
        for (const Nat& v : p)
          if (v != 0) return RuleReply::reject();
        if (Nat((unsigned long)p.size()) <= n) return RuleReply::read();
        return RuleReply::answer(p[to_u64(n)]);
      });
  Element g = m.rule_element(
      "beta-hat", [](const Nat& n, const std::vector<Nat>& p) -> RuleReply {
        (void)n;
        for (const Nat& v : p)
          if (v != 0) return RuleReply::answer(1);
        return RuleReply::read();
      });
  return {f, g};
}

Witness refute_continuous_decider(K2Model& m, Element gamma, Element yes_real,
                                  Element no_real, Fuel fuel) {
  Witness w;
  w.kind = "continuous-decider";
  w.offenders = {gamma};

  Element zeros = m.all_zeros();

  // Least coordinate where the yes/no verdict sequences disagree.
  std::optional<Nat> jstar;
  Nat vy, vn;
  for (unsigned long j = 0; j <= 64; ++j) {
    auto oy = m.coord(yes_real, Nat(j), fuel);
    auto on = m.coord(no_real, Nat(j), fuel);
    if (oy.is_defined() && on.is_defined() && oy.value() != on.value()) {
      jstar = Nat(j);
      vy = oy.value();
      vn = on.value();
      break;
    }
  }
  if (!jstar)
    throw PcaError("the yes/no verdict sequences agree on every sampled "
                   "coordinate; they cannot encode a verdict");

  std::vector<Nat> reads;
  Outcome<Nat> o = m.coord(m.applied(gamma, zeros), *jstar, fuel, &reads);
  AppRecord r1;
  r1.lhs = gamma;
  r1.rhs = zeros;
  r1.coord = *jstar;
  r1.fuel = fuel;
  r1.kind = o.kind();
  if (o.is_defined()) r1.coord_value = o.value();
  r1.note = "verdict coordinate on the zero sequence after " +
            std::to_string(reads.size()) + " reads";
  w.transcript.push_back(r1);

  if (!o.is_defined()) {
    w.clause = "invalid candidate: no verdict coordinate on the zero sequence "
               "within fuel";
    return w;
  }
  if (o.value() == vn) {
    w.clause = "the zero sequence belongs to the decided set, yet the "
               "candidate's verdict matches the 'no' sequence at the "
               "distinguishing coordinate";
    return w;
  }
  if (o.value() != vy) {
    w.clause = "invalid candidate: verdict coordinate matches neither the "
               "'yes' nor the 'no' sequence";
    return w;
  }

  // Continuity flip: the verdict was fixed after |reads| agreeing values, so
  // a sequence deviating just past them draws the same 'yes'.
  std::vector<Nat> pfx(reads.size(), Nat(0));
  pfx.push_back(Nat(1));
  Element x = m.periodic(std::move(pfx), {Nat(0)});
  w.offenders.push_back(x);

  AppRecord r2;
  Outcome<Nat> o2 = m.coord(m.applied(gamma, x), *jstar, fuel);
  r2.lhs = gamma;
  r2.rhs = x;
  r2.coord = *jstar;
  r2.fuel = fuel;
  r2.kind = o2.kind();
  if (o2.is_defined()) r2.coord_value = o2.value();
  r2.note = "verdict coordinate on the flipped sequence";
  w.transcript.push_back(r2);

  if (o2.is_defined() && o2.value() == vy)
    w.clause = "after " + std::to_string(reads.size()) +
               " agreeing reads the verdict was already fixed: the candidate "
               "answers 'yes' on a sequence with a later 1, which is outside "
               "the decided set";
  else
    w.clause = "continuity flip did not reproduce the verdict; the candidate "
               "is not a fixed-read decider (inconclusive)";
  return w;
}

std::vector<std::pair<std::string, Element>> candidate_decider_rules(K2Model& m) {
  std::vector<std::pair<std::string, Element>> out;
  out.emplace_back("yes-after-one-read",
                   m.rule_element("yes-after-one-read",
                                  [](const Nat&, const std::vector<Nat>& p) {
                                    if (p.size() < 1) return RuleReply::read();
                                    return RuleReply::answer(1);
                                  }));
  out.emplace_back("always-no",
                   m.rule_element("always-no",
                                  [](const Nat&, const std::vector<Nat>&) {
                                    return RuleReply::answer(0);
                                  }));
  out.emplace_back("yes-after-five-reads",
                   m.rule_element("yes-after-five-reads",
                                  [](const Nat&, const std::vector<Nat>& p) {
                                    if (p.size() < 5) return RuleReply::read();
                                    return RuleReply::answer(1);
                                  }));
  out.emplace_back("yes-iff-first-read-zero",
                   m.rule_element("yes-iff-first-read-zero",
                                  [](const Nat&, const std::vector<Nat>& p) {
                                    if (p.size() < 1) return RuleReply::read();
                                    return RuleReply::answer(p[0] == 0 ? 1 : 0);
                                  }));
  out.emplace_back("parity-of-first-three",
                   m.rule_element("parity-of-first-three",
                                  [](const Nat&, const std::vector<Nat>& p) {
                                    if (p.size() < 3) return RuleReply::read();
                                    Nat s = p[0] + p[1] + p[2];
                                    return RuleReply::answer(
                                        mpz_even_p(s.get_mpz_t()) ? 1 : 0);
                                  }));
  return out;
}

}  // namespace pca::k2
