#include "pca/k1.hpp"

#include <cctype>

#include "pca/errors.hpp"

namespace pca::k1 {

namespace {

ProgPtr mk(Op op, Nat value = 0, ProgPtr a = nullptr, ProgPtr b = nullptr, ProgPtr c = nullptr) {
  auto p = std::make_shared<Prog>();
  p->op = op;
  p->value = std::move(value);
  p->a = std::move(a);
  p->b = std::move(b);
  p->c = std::move(c);
  return p;
}

}  // namespace

ProgPtr Prog::input() { return mk(Op::Input); }
ProgPtr Prog::const_nat(Nat v) { return mk(Op::ConstNat, std::move(v)); }
ProgPtr Prog::succ(ProgPtr e) { return mk(Op::Succ, 0, std::move(e)); }
ProgPtr Prog::dbl(ProgPtr e) { return mk(Op::Double, 0, std::move(e)); }
ProgPtr Prog::pred(ProgPtr e) { return mk(Op::Pred, 0, std::move(e)); }
ProgPtr Prog::pair(ProgPtr e1, ProgPtr e2) { return mk(Op::PairNat, 0, std::move(e1), std::move(e2)); }
ProgPtr Prog::fst(ProgPtr e) { return mk(Op::Fst, 0, std::move(e)); }
ProgPtr Prog::snd(ProgPtr e) { return mk(Op::Snd, 0, std::move(e)); }
ProgPtr Prog::if_zero(ProgPtr g, ProgPtr t, ProgPtr e) {
  return mk(Op::IfZero, 0, std::move(g), std::move(t), std::move(e));
}
ProgPtr Prog::eq(ProgPtr e1, ProgPtr e2) { return mk(Op::Eq, 0, std::move(e1), std::move(e2)); }
ProgPtr Prog::apply(ProgPtr e1, ProgPtr e2) { return mk(Op::Apply, 0, std::move(e1), std::move(e2)); }
ProgPtr Prog::smn_node(ProgPtr e1, ProgPtr e2) { return mk(Op::Smn, 0, std::move(e1), std::move(e2)); }
ProgPtr Prog::diverge() { return mk(Op::Diverge); }

namespace {

using Bits = std::vector<bool>;

void emit_str(Bits& out, const char* s) {
  for (; *s; ++s) out.push_back(*s == '1');
}

// Payload for ConstNat: unary(len(bij(L))) 0 bij(L) bij(v), L = |bij(v)|.
void emit_nat_payload(Bits& out, const Nat& v) {
  Bits vb = bits_of_nat(v);
  Bits lb = bits_of_nat(Nat(static_cast<unsigned long>(vb.size())));
  for (std::size_t i = 0; i < lb.size(); ++i) out.push_back(true);
  out.push_back(false);
  out.insert(out.end(), lb.begin(), lb.end());
  out.insert(out.end(), vb.begin(), vb.end());
}

void emit_prog(Bits& out, const ProgPtr& p) {
  switch (p->op) {
    case Op::Succ:
      emit_str(out, "00");
      emit_prog(out, p->a);
      return;
    case Op::Double:
      emit_str(out, "01");
      emit_prog(out, p->a);
      return;
    case Op::Input:
      emit_str(out, "10");
      return;
    case Op::Apply:
      emit_str(out, "11000");
      emit_prog(out, p->a);
      emit_prog(out, p->b);
      return;
    case Op::ConstNat:
      emit_str(out, "11001");
      emit_nat_payload(out, p->value);
      return;
    case Op::Smn:
      emit_str(out, "11010");
      emit_prog(out, p->a);
      emit_prog(out, p->b);
      return;
    case Op::PairNat:
      emit_str(out, "11011");
      emit_prog(out, p->a);
      emit_prog(out, p->b);
      return;
    case Op::Fst:
      emit_str(out, "11100");
      emit_prog(out, p->a);
      return;
    case Op::Snd:
      emit_str(out, "11101");
      emit_prog(out, p->a);
      return;
    case Op::Pred:
      emit_str(out, "11110");
      emit_prog(out, p->a);
      return;
    case Op::IfZero:
      emit_str(out, "111110");
      emit_prog(out, p->a);
      emit_prog(out, p->b);
      emit_prog(out, p->c);
      return;
    case Op::Eq:
      emit_str(out, "1111110");
      emit_prog(out, p->a);
      emit_prog(out, p->b);
      return;
    case Op::Diverge:
      emit_str(out, "1111111");
      return;
  }
  throw PcaError("encode: bad op");
}

struct BitReader {
  const Bits& bits;
  std::size_t pos = 0;
  bool ok = true;

  int next() {
    if (pos >= bits.size()) {
      ok = false;
      return 0;
    }
    return bits[pos++] ? 1 : 0;
  }
};

// Depth guard: decoded ASTs nest one level per tag, and adversarial codes
// can nest linearly in their bit length; recursion here is fine for desk
// scale but guard anyway to keep decode total in practice.
constexpr std::size_t kMaxDecodeDepth = 100000;

ProgPtr parse_bits(BitReader& r, std::size_t depth) {
  if (!r.ok || depth > kMaxDecodeDepth) {
    r.ok = false;
    return nullptr;
  }
  if (r.next() == 0) {
    if (!r.ok) return nullptr;
    if (r.next() == 0) {
      ProgPtr a = parse_bits(r, depth + 1);
      return r.ok ? Prog::succ(std::move(a)) : nullptr;
    }
    if (!r.ok) return nullptr;
    ProgPtr a = parse_bits(r, depth + 1);
    return r.ok ? Prog::dbl(std::move(a)) : nullptr;
  }
  if (!r.ok) return nullptr;
  if (r.next() == 0) return r.ok ? Prog::input() : nullptr;
  if (!r.ok) return nullptr;
  int b3 = r.next(), b4 = r.next(), b5 = r.next();
  if (!r.ok) return nullptr;
  int sel = b3 * 4 + b4 * 2 + b5;
  switch (sel) {
    case 0: {  // Apply
      ProgPtr a = parse_bits(r, depth + 1);
      if (!r.ok) return nullptr;
      ProgPtr b = parse_bits(r, depth + 1);
      return r.ok ? Prog::apply(std::move(a), std::move(b)) : nullptr;
    }
    case 1: {  // ConstNat
      std::size_t ones = 0;
      while (true) {
        int bit = r.next();
        if (!r.ok) return nullptr;
        if (bit == 0) break;
        if (++ones > 64) {  // length-of-length beyond any sane payload
          r.ok = false;
          return nullptr;
        }
      }
      Bits lb;
      lb.reserve(ones);
      for (std::size_t i = 0; i < ones; ++i) {
        lb.push_back(r.next() == 1);
        if (!r.ok) return nullptr;
      }
      Nat len = nat_of_bits(lb);
      if (!fits_u64(len) || to_u64(len) > (1u << 26)) {
        r.ok = false;  // refuse absurd payload lengths
        return nullptr;
      }
      std::size_t L = static_cast<std::size_t>(to_u64(len));
      Bits vb;
      vb.reserve(L);
      for (std::size_t i = 0; i < L; ++i) {
        vb.push_back(r.next() == 1);
        if (!r.ok) return nullptr;
      }
      return Prog::const_nat(nat_of_bits(vb));
    }
    case 2: {  // Smn
      ProgPtr a = parse_bits(r, depth + 1);
      if (!r.ok) return nullptr;
      ProgPtr b = parse_bits(r, depth + 1);
      return r.ok ? Prog::smn_node(std::move(a), std::move(b)) : nullptr;
    }
    case 3: {  // PairNat
      ProgPtr a = parse_bits(r, depth + 1);
      if (!r.ok) return nullptr;
      ProgPtr b = parse_bits(r, depth + 1);
      return r.ok ? Prog::pair(std::move(a), std::move(b)) : nullptr;
    }
    case 4: {
      ProgPtr a = parse_bits(r, depth + 1);
      return r.ok ? Prog::fst(std::move(a)) : nullptr;
    }
    case 5: {
      ProgPtr a = parse_bits(r, depth + 1);
      return r.ok ? Prog::snd(std::move(a)) : nullptr;
    }
    case 6: {
      ProgPtr a = parse_bits(r, depth + 1);
      return r.ok ? Prog::pred(std::move(a)) : nullptr;
    }
    default: {  // 111 11...
      int b6 = r.next();
      if (!r.ok) return nullptr;
      if (b6 == 0) {  // IfZero
        ProgPtr g = parse_bits(r, depth + 1);
        if (!r.ok) return nullptr;
        ProgPtr t = parse_bits(r, depth + 1);
        if (!r.ok) return nullptr;
        ProgPtr e = parse_bits(r, depth + 1);
        return r.ok ? Prog::if_zero(std::move(g), std::move(t), std::move(e)) : nullptr;
      }
      int b7 = r.next();
      if (!r.ok) return nullptr;
      if (b7 == 0) {  // Eq
        ProgPtr a = parse_bits(r, depth + 1);
        if (!r.ok) return nullptr;
        ProgPtr b = parse_bits(r, depth + 1);
        return r.ok ? Prog::eq(std::move(a), std::move(b)) : nullptr;
      }
      return Prog::diverge();
    }
  }
}

ProgPtr decode_fresh(const Nat& code) {
  Bits bits = bits_of_nat(code);
  BitReader r{bits};
  ProgPtr p = parse_bits(r, 0);
  if (!r.ok || r.pos != bits.size()) return Prog::diverge();
  return p;
}

std::mutex g_decode_mu;
std::map<Nat, ProgPtr> g_decode_cache;

ProgPtr decode_cached(const Nat& code) {
  std::lock_guard<std::mutex> lk(g_decode_mu);
  auto it = g_decode_cache.find(code);
  if (it != g_decode_cache.end()) return it->second;
  ProgPtr p = decode_fresh(code);
  // Unbounded memo is fine at desk scale; cap defensively anyway.
  if (g_decode_cache.size() > 200000) g_decode_cache.clear();
  g_decode_cache.emplace(code, p);
  return p;
}

}  // namespace

Nat encode(const ProgPtr& p) {
  Bits out;
  emit_prog(out, p);
  return nat_of_bits(out);
}

ProgPtr decode(const Nat& code) { return decode_cached(code); }

bool valid_code(const Nat& code) {
  Bits bits = bits_of_nat(code);
  BitReader r{bits};
  ProgPtr p = parse_bits(r, 0);
  return r.ok && p != nullptr && r.pos == bits.size();
}

std::string print_prog(const ProgPtr& p) {
  switch (p->op) {
    case Op::Input:
      return "(input)";
    case Op::ConstNat:
      return "(const-nat " + p->value.get_str() + ")";
    case Op::Succ:
      return "(succ " + print_prog(p->a) + ")";
    case Op::Double:
      return "(double " + print_prog(p->a) + ")";
    case Op::Pred:
      return "(pred " + print_prog(p->a) + ")";
    case Op::PairNat:
      return "(pair " + print_prog(p->a) + " " + print_prog(p->b) + ")";
    case Op::Fst:
      return "(fst " + print_prog(p->a) + ")";
    case Op::Snd:
      return "(snd " + print_prog(p->a) + ")";
    case Op::IfZero:
      return "(if-zero " + print_prog(p->a) + " " + print_prog(p->b) + " " + print_prog(p->c) + ")";
    case Op::Eq:
      return "(eq " + print_prog(p->a) + " " + print_prog(p->b) + ")";
    case Op::Apply:
      return "(apply " + print_prog(p->a) + " " + print_prog(p->b) + ")";
    case Op::Smn:
      return "(smn " + print_prog(p->a) + " " + print_prog(p->b) + ")";
    case Op::Diverge:
      return "(diverge)";
  }
  throw PcaError("print_prog: bad op");
}

namespace {

struct ProgParser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw TermError("program parse: expected '" + std::string(1, c) + "' at offset " +
                      std::to_string(pos));
    ++pos;
  }

  std::string symbol() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (pos == start)
      throw TermError("program parse: expected symbol at offset " + std::to_string(pos));
    return text.substr(start, pos - start);
  }

  ProgPtr prog() {
    expect('(');
    std::string head = symbol();
    ProgPtr result;
    if (head == "input") {
      result = Prog::input();
    } else if (head == "diverge") {
      result = Prog::diverge();
    } else if (head == "const-nat") {
      std::string digits = symbol();
      for (char ch : digits)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
          throw TermError("program parse: bad natural '" + digits + "'");
      result = Prog::const_nat(Nat(digits));
    } else if (head == "succ") {
      result = Prog::succ(prog());
    } else if (head == "double") {
      result = Prog::dbl(prog());
    } else if (head == "pred") {
      result = Prog::pred(prog());
    } else if (head == "fst") {
      result = Prog::fst(prog());
    } else if (head == "snd") {
      result = Prog::snd(prog());
    } else if (head == "pair") {
      ProgPtr a = prog();
      result = Prog::pair(std::move(a), prog());
    } else if (head == "eq") {
      ProgPtr a = prog();
      result = Prog::eq(std::move(a), prog());
    } else if (head == "apply") {
      ProgPtr a = prog();
      result = Prog::apply(std::move(a), prog());
    } else if (head == "smn") {
      ProgPtr a = prog();
      result = Prog::smn_node(std::move(a), prog());
    } else if (head == "if-zero") {
      ProgPtr g = prog();
      ProgPtr t = prog();
      result = Prog::if_zero(std::move(g), std::move(t), prog());
    } else {
      throw TermError("program parse: unknown form '" + head + "'");
    }
    expect(')');
    return result;
  }
};

struct RunCtx {
  Fuel budget;
  Fuel steps = 0;
  bool exhausted = false;
  bool diverged = false;
};

// One C++ frame per nested argument position; Apply targets and IfZero
// branches iterate in place so self-interpretation loops do not grow the
// stack. The depth cap is fuel-independent, keeping outcomes monotone.
constexpr int kMaxEvalDepth = 6000;

Nat eval_node(ProgPtr p, Nat input, RunCtx& ctx, int depth) {
  if (depth > kMaxEvalDepth) {
    ctx.exhausted = true;
    return 0;
  }
  while (true) {
    if (ctx.steps >= ctx.budget) {
      ctx.exhausted = true;
      return 0;
    }
    ++ctx.steps;
    switch (p->op) {
      case Op::Input:
        return input;
      case Op::ConstNat:
        return p->value;
      case Op::Succ: {
        Nat v = eval_node(p->a, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        return v + 1;
      }
      case Op::Double: {
        Nat v = eval_node(p->a, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        return v * 2;
      }
      case Op::Pred: {
        Nat v = eval_node(p->a, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        return v == 0 ? Nat(0) : Nat(v - 1);
      }
      case Op::PairNat: {
        Nat v1 = eval_node(p->a, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        Nat v2 = eval_node(p->b, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        return cantor_pair(v1, v2);
      }
      case Op::Fst: {
        Nat v = eval_node(p->a, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        return cantor_unpair(v).first;
      }
      case Op::Snd: {
        Nat v = eval_node(p->a, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        return cantor_unpair(v).second;
      }
      case Op::Eq: {
        Nat v1 = eval_node(p->a, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        Nat v2 = eval_node(p->b, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        return v1 == v2 ? Nat(0) : Nat(1);
      }
      case Op::Smn: {
        Nat c = eval_node(p->a, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        Nat a = eval_node(p->b, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        return smn(c, a);
      }
      case Op::IfZero: {
        Nat g = eval_node(p->a, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        p = (g == 0) ? p->b : p->c;
        continue;
      }
      case Op::Apply: {
        Nat code = eval_node(p->a, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        Nat arg = eval_node(p->b, input, ctx, depth + 1);
        if (ctx.exhausted || ctx.diverged) return 0;
        p = decode_cached(code);
        input = std::move(arg);
        continue;
      }
      case Op::Diverge:
        ctx.diverged = true;
        return 0;
    }
  }
}

}  // namespace

ProgPtr parse_prog(const std::string& text) {
  ProgParser p{text};
  ProgPtr result = p.prog();
  p.skip_ws();
  if (p.pos != text.size())
    throw TermError("program parse: trailing input at offset " + std::to_string(p.pos));
  return result;
}

Outcome<Nat> run(const Nat& code, const Nat& input, Fuel fuel) {
  RunCtx ctx{fuel};
  Nat v = eval_node(decode_cached(code), input, ctx, 0);
  if (ctx.diverged) return Outcome<Nat>::diverged(ctx.steps);
  if (ctx.exhausted) return Outcome<Nat>::exhausted(ctx.steps);
  return Outcome<Nat>::defined(std::move(v), ctx.steps);
}

Outcome<Nat> run2(const Nat& code, const Nat& a, const Nat& x, Fuel fuel) {
  return run(code, cantor_pair(a, x), fuel);
}

Nat smn(const Nat& code, const Nat& a) {
  return encode(Prog::apply(Prog::const_nat(code),
                            Prog::pair(Prog::const_nat(a), Prog::input())));
}

namespace {

Nat build_k_code() {
  // run(k, a) = smn(fst-code, a); run(that, b) = fst(pair(a, b)) = a.
  Nat proj1 = encode(Prog::fst(Prog::input()));
  return encode(Prog::smn_node(Prog::const_nat(proj1), Prog::input()));
}

Nat build_s_code() {
  // s3 on input ⟨a, ⟨b, c⟩⟩ computes (a·c)·(b·c).
  auto in = Prog::input;
  ProgPtr ac = Prog::apply(Prog::fst(in()), Prog::snd(Prog::snd(in())));
  ProgPtr bc = Prog::apply(Prog::fst(Prog::snd(in())), Prog::snd(Prog::snd(in())));
  Nat s3 = encode(Prog::apply(std::move(ac), std::move(bc)));
  // curry on input ⟨c, a⟩ yields smn(c, a).
  Nat curry = encode(Prog::smn_node(Prog::fst(Prog::input()), Prog::snd(Prog::input())));
  // run(s, a) = smn(curry, smn(s3, a)); two further arguments route through
  // curry and land in s3 with input ⟨a, ⟨b, c⟩⟩.
  return encode(Prog::smn_node(Prog::const_nat(curry),
                               Prog::smn_node(Prog::const_nat(s3), Prog::input())));
}

}  // namespace

const Nat& k_code() {
  static const Nat code = build_k_code();
  return code;
}

const Nat& s_code() {
  static const Nat code = build_s_code();
  return code;
}

const Nat& diverge_code() {
  static const Nat code = encode(Prog::diverge());
  return code;
}

const Nat& double_plus_one_code() {
  static const Nat code = encode(Prog::succ(Prog::dbl(Prog::input())));
  return code;
}

Nat precomplete_totalizer(const Nat& b) {
  // t_b on input ⟨a, x⟩ runs (b·a) and applies the resulting code to x.
  Nat t_b = encode(Prog::apply(Prog::apply(Prog::const_nat(b), Prog::fst(Prog::input())),
                               Prog::snd(Prog::input())));
  return encode(Prog::smn_node(Prog::const_nat(t_b), Prog::input()));
}

EvalOutcome K1Model::apply(Element a, Element b, Fuel fuel) {
  Outcome<Nat> r = run(nat_of(a), nat_of(b), fuel);
  switch (r.kind()) {
    case OutcomeKind::Defined:
      return EvalOutcome::defined(from_nat(r.value()), r.spent());
    case OutcomeKind::ProvenDivergent:
      return EvalOutcome::diverged(r.spent());
    default:
      return EvalOutcome::exhausted(r.spent());
  }
}

std::string K1Model::show(Element a) const { return nat_brief(nat_of(a)); }

std::optional<Element> K1Model::combinator_k() { return from_nat(k_code()); }

std::optional<Element> K1Model::combinator_s() { return from_nat(s_code()); }

std::optional<std::pair<Element, Element>> K1Model::divergent_pair() {
  Element d = from_nat(diverge_code());
  return std::make_pair(d, d);
}

std::optional<Element> K1Model::resolve(const std::string& name) {
  if (name == "k") return combinator_k();
  if (name == "s") return combinator_s();
  if (!name.empty()) {
    bool digits = true;
    for (char c : name)
      if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
    if (digits) return from_nat(Nat(name));
  }
  return std::nullopt;
}

Element K1Model::from_nat(const Nat& n) {
  std::lock_guard<std::mutex> lk(mu_);
  auto it = index_.find(n);
  if (it != index_.end()) return it->second;
  Element e = values_.size();
  values_.push_back(n);
  index_.emplace(n, e);
  return e;
}

Nat K1Model::nat_of(Element e) const {
  std::lock_guard<std::mutex> lk(mu_);
  if (e >= values_.size()) throw PcaError("k1: unknown element handle");
  return values_[e];
}

KernelVerdict NumberingKernel::agrees(Model& model, Element a, Element b,
                                      const std::vector<Element>& probes, Fuel fuel) const {
  KernelVerdict v;
  if (is_identity) {
    v.distinguished = (a != b);
    return v;
  }
  for (Element x : probes) {
    EvalOutcome ra = model.apply(a, x, fuel);
    EvalOutcome rb = model.apply(b, x, fuel);
    bool mismatch = (ra.is_defined() && rb.is_defined() && ra.value() != rb.value()) ||
                    (ra.is_defined() && rb.is_diverged()) ||
                    (ra.is_diverged() && rb.is_defined());
    if (mismatch) {
      v.distinguished = true;
      v.probe = x;
      return v;
    }
  }
  return v;
}

NumberingKernel identity_kernel() { return NumberingKernel{"identity", true}; }

NumberingKernel extensional_kernel() { return NumberingKernel{"extensional", false}; }

}  // namespace pca::k1
