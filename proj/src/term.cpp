#include "pca/term.hpp"

#include <cctype>
#include <vector>

namespace pca {

TermPtr Term::constant(std::string n, std::optional<Element> e) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Const;
  t->name = std::move(n);
  t->element = e;
  return t;
}

TermPtr Term::variable(std::string n) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->name = std::move(n);
  return t;
}

TermPtr Term::app(TermPtr l, TermPtr r) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::App;
  t->left = std::move(l);
  t->right = std::move(r);
  return t;
}

TermPtr Term::lam(std::string binder, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Lambda;
  t->name = std::move(binder);
  t->right = std::move(body);
  return t;
}

TermPtr Term::apps(std::initializer_list<TermPtr> ts) {
  TermPtr acc;
  for (const TermPtr& t : ts) acc = acc ? Term::app(acc, t) : t;
  if (!acc) throw TermError("apps: empty chain");
  return acc;
}

TermPtr Term::apps(const std::vector<TermPtr>& ts) {
  TermPtr acc;
  for (const TermPtr& t : ts) acc = acc ? Term::app(acc, t) : t;
  if (!acc) throw TermError("apps: empty chain");
  return acc;
}

static void free_vars_into(const TermPtr& t, std::set<std::string>& bound,
                           std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Const:
      return;
    case TermKind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case TermKind::App:
      free_vars_into(t->left, bound, out);
      free_vars_into(t->right, bound, out);
      return;
    case TermKind::Lambda: {
      bool fresh = bound.insert(t->name).second;
      free_vars_into(t->right, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
  }
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, out;
  free_vars_into(t, bound, out);
  return out;
}

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& replacement) {
  switch (t->kind) {
    case TermKind::Const:
      return t;
    case TermKind::Var:
      return t->name == x ? replacement : t;
    case TermKind::App:
      return Term::app(substitute(t->left, x, replacement),
                       substitute(t->right, x, replacement));
    case TermKind::Lambda:
      if (t->name == x) return t;  // shadowed
      return Term::lam(t->name, substitute(t->right, x, replacement));
  }
  throw TermError("substitute: bad term kind");
}

static bool occurs_free(const TermPtr& t, const std::string& x) {
  switch (t->kind) {
    case TermKind::Const:
      return false;
    case TermKind::Var:
      return t->name == x;
    case TermKind::App:
      return occurs_free(t->left, x) || occurs_free(t->right, x);
    case TermKind::Lambda:
      return t->name != x && occurs_free(t->right, x);
  }
  return false;
}

TermPtr lambda_star(const std::string& x, const TermPtr& body) {
  if (body->kind == TermKind::Lambda)
    throw TermError("lambda_star: body still contains a binder");
  switch (body->kind) {
    case TermKind::Var:
      if (body->name == x) return Term::constant("i");
      return Term::app(Term::constant("k"), body);
    case TermKind::Const:
      return Term::app(Term::constant("k"), body);
    case TermKind::App:
      return Term::app(Term::app(Term::constant("s"), lambda_star(x, body->left)),
                       lambda_star(x, body->right));
    default:
      throw TermError("lambda_star: bad term kind");
  }
}

TermPtr eliminate_binders(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Const:
    case TermKind::Var:
      return t;
    case TermKind::App:
      return Term::app(eliminate_binders(t->left), eliminate_binders(t->right));
    case TermKind::Lambda:
      return lambda_star(t->name, eliminate_binders(t->right));
  }
  throw TermError("eliminate_binders: bad term kind");
}

static void print_into(const TermPtr& t, std::string& out) {
  switch (t->kind) {
    case TermKind::Const:
      out += "(const ";
      out += t->name;
      out += ")";
      return;
    case TermKind::Var:
      out += "(var ";
      out += t->name;
      out += ")";
      return;
    case TermKind::App:
      out += "(app ";
      print_into(t->left, out);
      out += " ";
      print_into(t->right, out);
      out += ")";
      return;
    case TermKind::Lambda:
      out += "(lam ";
      out += t->name;
      out += " ";
      print_into(t->right, out);
      out += ")";
      return;
  }
}

std::string print_term(const TermPtr& t) {
  std::string out;
  print_into(t, out);
  return out;
}

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw TermError("term parse: expected '" + std::string(1, c) + "' at offset " +
                      std::to_string(pos));
    ++pos;
  }

  std::string symbol() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (pos == start) throw TermError("term parse: expected symbol at offset " + std::to_string(pos));
    return text.substr(start, pos - start);
  }

  TermPtr term() {
    expect('(');
    std::string head = symbol();
    TermPtr result;
    if (head == "const") {
      result = Term::constant(symbol());
    } else if (head == "var") {
      result = Term::variable(symbol());
    } else if (head == "app") {
      TermPtr l = term();
      TermPtr r = term();
      result = Term::app(std::move(l), std::move(r));
    } else if (head == "lam") {
      std::string binder = symbol();
      result = Term::lam(std::move(binder), term());
    } else {
      throw TermError("term parse: unknown form '" + head + "'");
    }
    expect(')');
    return result;
  }
};

}  // namespace

TermPtr parse_term(const std::string& text) {
  Parser p{text};
  TermPtr t = p.term();
  p.skip_ws();
  if (p.pos != text.size()) throw TermError("term parse: trailing input at offset " + std::to_string(p.pos));
  return t;
}

namespace {

// Strict evaluation with a shared apply-call budget. Each model call also
// receives `per_call_fuel` as its internal budget.
struct Evaluator {
  Model& model;
  const ConstResolver& resolver;
  Fuel per_call_fuel;
  Fuel budget;
  Fuel used = 0;

  EvalOutcome eval(const TermPtr& t) {
    switch (t->kind) {
      case TermKind::Const: {
        if (t->element) return EvalOutcome::defined(*t->element, used);
        if (resolver) {
          if (auto e = resolver(t->name)) return EvalOutcome::defined(*e, used);
        }
        if (auto e = model.resolve(t->name)) return EvalOutcome::defined(*e, used);
        throw TermError("eval: unresolved constant '" + t->name + "'");
      }
      case TermKind::Var:
        throw TermError("eval: free variable '" + t->name + "' in closed evaluation");
      case TermKind::App: {
        EvalOutcome l = eval(t->left);
        if (!l.is_defined()) return l;
        EvalOutcome r = eval(t->right);
        if (!r.is_defined()) return r;
        if (used >= budget) return EvalOutcome::exhausted(used);
        ++used;
        EvalOutcome a = model.apply(l.value(), r.value(), per_call_fuel);
        switch (a.kind()) {
          case OutcomeKind::Defined:
            return EvalOutcome::defined(a.value(), used);
          case OutcomeKind::ProvenDivergent:
            return EvalOutcome::diverged(used);
          default:
            return EvalOutcome::exhausted(used);
        }
      }
      case TermKind::Lambda:
        throw TermError("eval: unexpected binder (eliminate_binders first)");
    }
    throw TermError("eval: bad term kind");
  }
};

}  // namespace

EvalOutcome eval_closed(Model& model, const TermPtr& t, Fuel fuel, const ConstResolver& resolver,
                        EvalStats* stats) {
  TermPtr compiled = eliminate_binders(t);
  auto fv = free_vars(compiled);
  if (!fv.empty())
    throw TermError("eval: term has free variable '" + *fv.begin() + "'");
  Evaluator ev{model, resolver, fuel, fuel};
  EvalOutcome out = ev.eval(compiled);
  if (stats) stats->apply_calls = ev.used;
  return out;
}

}  // namespace pca
