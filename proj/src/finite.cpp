#include "pca/finite.hpp"

#include <sstream>

#include "pca/errors.hpp"

namespace pca {

AxiomReport check_pas_axioms(const FiniteTable& t) {
  AxiomReport rep;
  auto fail = [&](std::string clause, int a, int b, int c) {
    rep.ok = false;
    rep.first = AxiomViolation{std::move(clause), {a, b, c}};
  };

  const int n = t.n;
  for (int a = 0; a < n && rep.ok; ++a) {
    auto ka = t.at(t.k, a);
    if (!ka) {
      fail("k a undefined", a, -1, -1);
      break;
    }
    for (int b = 0; b < n && rep.ok; ++b) {
      auto kab = t.at(*ka, b);
      if (!kab || *kab != a) fail("k a b != a", a, b, -1);
    }
  }

  for (int a = 0; a < n && rep.ok; ++a) {
    auto sa = t.at(t.s, a);
    if (!sa) {
      fail("s a undefined", a, -1, -1);
      break;
    }
    for (int b = 0; b < n && rep.ok; ++b) {
      auto sab = t.at(*sa, b);
      if (!sab) {
        fail("s a b undefined", a, b, -1);
        break;
      }
      for (int c = 0; c < n && rep.ok; ++c) {
        auto lhs = t.at(*sab, c);
        auto ac = t.at(a, c);
        auto bc = t.at(b, c);
        std::optional<int> rhs;
        if (ac && bc) rhs = t.at(*ac, *bc);
        // Kleene equality: both sides undefined, or defined and equal.
        if (lhs.has_value() != rhs.has_value() ||
            (lhs && rhs && *lhs != *rhs))
          fail("s a b c !~ (a c)(b c)", a, b, c);
      }
    }
  }
  return rep;
}

std::vector<FiniteTable> search_finite_pca(int n) {
  if (n < 1 || n > 3)
    throw PcaError("finite search supports sizes 1..3, got " +
                   std::to_string(n));

  std::vector<FiniteTable> found;
  const int cells = n * n;
  // Each cell ranges over {undefined, 0, …, n-1}, encoded 0..n; enumerate the
  // whole base-(n+1) counter so results come out in lexicographic order.
  std::vector<int> code(cells, 0);
  FiniteTable t;
  t.n = n;
  t.cells.assign(cells, std::nullopt);

  for (;;) {
    for (int j = 0; j < cells; ++j)
      t.cells[j] = code[j] == 0 ? std::nullopt : std::optional<int>(code[j] - 1);
    for (t.k = 0; t.k < n; ++t.k)
      for (t.s = 0; t.s < n; ++t.s)
        if (check_pas_axioms(t).ok) found.push_back(t);

    int j = cells - 1;
    while (j >= 0 && code[j] == n) code[j--] = 0;
    if (j < 0) break;
    ++code[j];
  }
  return found;
}

std::string serialize_table(const FiniteTable& t) {
  std::ostringstream os;
  os << "n=" << t.n << "\n";
  os << "k=" << t.k << " s=" << t.s << "\n";
  for (int a = 0; a < t.n; ++a) {
    for (int b = 0; b < t.n; ++b) {
      if (b) os << " ";
      auto v = t.at(a, b);
      if (v)
        os << *v;
      else
        os << ".";
    }
    os << "\n";
  }
  return os.str();
}

FiniteTable parse_table(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  FiniteTable t;

  auto want = [&](const std::string& key) {
    if (!(is >> tok) || tok.rfind(key + "=", 0) != 0)
      throw PcaError("finite table: expected '" + key + "=<int>'");
    return std::stoi(tok.substr(key.size() + 1));
  };
  t.n = want("n");
  if (t.n < 1 || t.n > 64) throw PcaError("finite table: size out of range");
  t.k = want("k");
  t.s = want("s");
  if (t.k < 0 || t.k >= t.n || t.s < 0 || t.s >= t.n)
    throw PcaError("finite table: k/s designation out of range");

  t.cells.assign(t.n * t.n, std::nullopt);
  for (int j = 0; j < t.n * t.n; ++j) {
    if (!(is >> tok)) throw PcaError("finite table: too few cells");
    if (tok == ".") continue;
    int v = std::stoi(tok);
    if (v < 0 || v >= t.n) throw PcaError("finite table: cell out of range");
    t.cells[j] = v;
  }
  if (is >> tok) throw PcaError("finite table: trailing input");
  return t;
}

FiniteModel::FiniteModel(FiniteTable t) : table_(std::move(t)) {
  if (table_.n < 1 || (int)table_.cells.size() != table_.n * table_.n)
    throw PcaError("finite model: malformed table");
}

EvalOutcome FiniteModel::apply(Element a, Element b, Fuel fuel) {
  if (fuel == 0) return EvalOutcome::exhausted(0);
  if (a >= (Element)table_.n || b >= (Element)table_.n)
    throw PcaError("finite model: element out of range");
  auto v = table_.at((int)a, (int)b);
  // A blank cell is definitive: the table is the whole operation.
  if (!v) return EvalOutcome::diverged(1);
  return EvalOutcome::defined((Element)*v, 1);
}

std::string FiniteModel::show(Element e) const { return std::to_string(e); }

std::optional<Element> FiniteModel::combinator_k() {
  return (Element)table_.k;
}

std::optional<Element> FiniteModel::combinator_s() {
  return (Element)table_.s;
}

std::optional<std::pair<Element, Element>> FiniteModel::divergent_pair() {
  for (int a = 0; a < table_.n; ++a)
    for (int b = 0; b < table_.n; ++b)
      if (!table_.at(a, b)) return std::make_pair((Element)a, (Element)b);
  return std::nullopt;
}

std::optional<Element> FiniteModel::resolve(const std::string& name) {
  if (name == "k") return (Element)table_.k;
  if (name == "s") return (Element)table_.s;
  try {
    size_t pos = 0;
    int v = std::stoi(name, &pos);
    if (pos == name.size() && v >= 0 && v < table_.n) return (Element)v;
  } catch (...) {
  }
  return std::nullopt;
}

}  // namespace pca
