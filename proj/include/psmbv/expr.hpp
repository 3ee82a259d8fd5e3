#pragma once

#include <map>
#include <set>
#include <sstream>

#include "psmbv/generator.hpp"
#include "psmbv/rational.hpp"

namespace psmbv {

// Canonical monomial: du-part as a bitmask (bit 0 = du1, bit 1 = du2),
// odd-parity generators as a strictly increasing list, even-parity
// generators with positive exponents. Every constructor-level operation
// keeps the representation unique per monomial class.
struct Monomial {
  unsigned du_mask = 0;
  std::vector<GeneratorRef> odds;
  std::vector<std::pair<GeneratorRef, int>> evens;

  bool is_one() const { return du_mask == 0 && odds.empty() && evens.empty(); }

  int form_degree() const {
    return (du_mask & 1u ? 1 : 0) + (du_mask & 2u ? 1 : 0);
  }

  int ghost_degree() const {
    int g = 0;
    for (const auto& o : odds) g += o.ghost;
    for (const auto& [e, n] : evens) g += e.ghost * n;
    return g;
  }

  BiDegree bidegree() const { return {form_degree(), ghost_degree()}; }
  int parity() const { return bidegree().parity(); }

  // The odd generators in canonical order, du factors included.
  std::vector<GeneratorRef> odd_sequence() const {
    std::vector<GeneratorRef> seq;
    if (du_mask & 1u) seq.push_back(GeneratorRef::base_form(1));
    if (du_mask & 2u) seq.push_back(GeneratorRef::base_form(2));
    seq.insert(seq.end(), odds.begin(), odds.end());
    return seq;
  }

  auto key() const { return std::tuple(du_mask, odds, evens); }
  bool operator==(const Monomial& o) const { return key() == o.key(); }
  auto operator<=>(const Monomial& o) const { return key() <=> o.key(); }
};

// Multiplies two canonical monomials; returns the sign, or nullopt when the
// product vanishes (repeated odd generator).
inline std::optional<std::pair<Monomial, int>> mul(const Monomial& a, const Monomial& b) {
  auto sa = a.odd_sequence();
  auto sb = b.odd_sequence();
  std::vector<GeneratorRef> merged;
  merged.reserve(sa.size() + sb.size());
  size_t i = 0, j = 0;
  long inversions = 0;
  while (i < sa.size() && j < sb.size()) {
    if (sa[i] == sb[j]) return std::nullopt;  // odd square-zero
    if (sa[i] < sb[j]) {
      merged.push_back(sa[i++]);
    } else {
      inversions += static_cast<long>(sa.size() - i);
      merged.push_back(sb[j++]);
    }
  }
  merged.insert(merged.end(), sa.begin() + static_cast<long>(i), sa.end());
  merged.insert(merged.end(), sb.begin() + static_cast<long>(j), sb.end());

  Monomial out;
  for (const auto& g : merged) {
    if (g.kind == GeneratorRef::Kind::BaseForm)
      out.du_mask |= (g.mu == 1 ? 1u : 2u);
    else
      out.odds.push_back(g);
  }
  // Even generators commute with everything.
  size_t p = 0, q = 0;
  while (p < a.evens.size() || q < b.evens.size()) {
    if (q == b.evens.size() || (p < a.evens.size() && a.evens[p].first < b.evens[q].first)) {
      out.evens.push_back(a.evens[p++]);
    } else if (p == a.evens.size() || b.evens[q].first < a.evens[p].first) {
      out.evens.push_back(b.evens[q++]);
    } else {
      out.evens.emplace_back(a.evens[p].first, a.evens[p].second + b.evens[q].second);
      ++p, ++q;
    }
  }
  return std::pair{std::move(out), (inversions % 2 == 0) ? 1 : -1};
}

// Canonical sum of monomials with nonzero exact rational coefficients.
class Expr {
 public:
  Expr() = default;
  explicit Expr(Rational c) {
    if (c != 0) terms_[Monomial{}] = std::move(c);
  }
  Expr(const Monomial& m, Rational c) {
    if (c != 0) terms_[m] = std::move(c);
  }

  static Expr generator(const GeneratorRef& g, Rational c = 1) {
    Monomial m;
    if (g.kind == GeneratorRef::Kind::BaseForm)
      m.du_mask = (g.mu == 1 ? 1u : 2u);
    else if (g.parity() == 1)
      m.odds.push_back(g);
    else
      m.evens.emplace_back(g, 1);
    return Expr(m, std::move(c));
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Expr& operator+=(const Expr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Expr& operator-=(const Expr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator-(const Expr& a) {
    Expr r;
    for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
    return r;
  }
  friend Expr operator*(const Rational& c, const Expr& a) {
    Expr r;
    if (c == 0) return r;
    for (const auto& [m, k] : a.terms_) r.terms_[m] = c * k;
    return r;
  }

  bool operator==(const Expr& o) const { return terms_ == o.terms_; }

 private:
  std::map<Monomial, Rational> terms_;
};

// Graded commutative product in canonical form.
inline Expr mul(const Expr& a, const Expr& b) {
  Expr out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      if (auto p = mul(ma, mb)) out.add_term(p->first, ca * cb * p->second);
  return out;
}

inline Expr mul(const Expr& a, const Expr& b, const Expr& c) { return mul(mul(a, b), c); }

// Graded left derivative with respect to a single generator: deletes the
// leftmost occurrence and applies the Koszul sign of the prefix.
inline Expr left_partial(const Expr& f, const GeneratorRef& g) {
  Expr out;
  const bool g_odd = g.parity() == 1;
  for (const auto& [m, c] : f.terms()) {
    if (g_odd) {
      auto seq = m.odd_sequence();
      size_t pos = 0;
      bool found = false;
      for (; pos < seq.size(); ++pos)
        if (seq[pos] == g) {
          found = true;
          break;
        }
      if (!found) continue;
      Monomial r = m;
      if (g.kind == GeneratorRef::Kind::BaseForm) {
        r.du_mask &= ~(g.mu == 1 ? 1u : 2u);
      } else {
        r.odds.erase(r.odds.begin() + static_cast<long>(pos - static_cast<size_t>(m.form_degree())));
      }
      out.add_term(r, (pos % 2 == 0) ? c : -c);
    } else {
      for (size_t i = 0; i < m.evens.size(); ++i) {
        if (!(m.evens[i].first == g)) continue;
        Monomial r = m;
        int e = r.evens[i].second;
        if (e == 1)
          r.evens.erase(r.evens.begin() + static_cast<long>(i));
        else
          r.evens[i].second = e - 1;
        out.add_term(r, c * e);
        break;
      }
    }
  }
  return out;
}

// Homomorphic replacement of abstract symbols, then normalization.
// Throws when a symbol present in f is missing from the map.
inline Expr substitute(const Expr& f, const std::map<int, Expr>& map) {
  Expr out;
  for (const auto& [m, c] : f.terms()) {
    Expr term(Monomial{}, c);
    Monomial rest = m;
    std::vector<std::pair<int, int>> symbols;  // (symbol, exponent)
    std::vector<std::pair<GeneratorRef, int>> kept;
    for (const auto& [g, e] : rest.evens) {
      if (g.kind == GeneratorRef::Kind::Symbol)
        symbols.emplace_back(g.symbol, e);
      else
        kept.emplace_back(g, e);
    }
    rest.evens = std::move(kept);
    term = mul(term, Expr(rest, 1));
    for (const auto& [s, e] : symbols) {
      auto it = map.find(s);
      if (it == map.end())
        throw std::invalid_argument("substitute: unmapped symbol x" + std::to_string(s));
      for (int r = 0; r < e; ++r) term = mul(term, it->second);
    }
    out += term;
  }
  return out;
}

// The set of bidegrees of monomials present; empty for the zero expression.
inline std::set<BiDegree> bidegrees(const Expr& f) {
  std::set<BiDegree> out;
  for (const auto& [m, c] : f.terms()) out.insert(m.bidegree());
  return out;
}

inline bool is_form_homogeneous(const Expr& f, int degree) {
  for (const auto& [m, c] : f.terms())
    if (m.form_degree() != degree) return false;
  return true;
}

inline bool is_ghost_homogeneous(const Expr& f, int ghost) {
  for (const auto& [m, c] : f.terms())
    if (m.ghost_degree() != ghost) return false;
  return true;
}

// Splits into ghost-homogeneous pieces, keyed by ghost degree.
inline std::map<int, Expr> ghost_pieces(const Expr& f) {
  std::map<int, Expr> out;
  for (const auto& [m, c] : f.terms()) out[m.ghost_degree()].add_term(m, c);
  return out;
}

// --- deterministic plain-text rendering -----------------------------------

inline std::string render(const GeneratorRef& g, const ComponentTable& table) {
  switch (g.kind) {
    case GeneratorRef::Kind::BaseForm:
      return "du" + std::to_string(g.mu);
    case GeneratorRef::Kind::Symbol:
      return "x" + std::to_string(g.symbol);
    case GeneratorRef::Kind::Jet: {
      std::ostringstream os;
      os << table[g.comp].name;
      if (g.idx_count > 0) {
        os << '[';
        for (int i = 0; i < g.idx_count; ++i) {
          if (i) os << ',';
          os << g.idx[static_cast<size_t>(i)];
        }
        os << ']';
      }
      os << "_{(" << g.jet.n1 << ',' << g.jet.n2 << ")}";
      return os.str();
    }
  }
  return "?";
}

inline std::string render(const Monomial& m, const ComponentTable& table) {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const std::string& s) {
    if (!first) os << '*';
    os << s;
    first = false;
  };
  if (m.du_mask & 1u) emit("du1");
  if (m.du_mask & 2u) emit("du2");
  for (const auto& g : m.odds) emit(render(g, table));
  for (const auto& [g, e] : m.evens) {
    std::string s = render(g, table);
    if (e > 1) s += "^" + std::to_string(e);
    emit(s);
  }
  return first ? "1" : os.str();
}

inline std::string render(const Expr& f, const ComponentTable& table) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << '-';
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    std::string ms = render(m, table);
    if (a == 1 && !m.is_one())
      os << ms;
    else if (m.is_one())
      os << to_string(a);
    else
      os << to_string(a) << '*' << ms;
    first = false;
  }
  return os.str();
}

}  // namespace psmbv
