#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace psmbv {

// (form degree, ghost degree). Commutation signs depend only on the parity
// of form + ghost.
struct BiDegree {
  int form = 0;
  int ghost = 0;

  int parity() const { return ((form + ghost) % 2 + 2) % 2; }

  auto operator<=>(const BiDegree&) const = default;
};

// Symmetric multi-index over the two base directions: n1 applications of D_1
// and n2 of D_2. Composition is commutative, so counts suffice.
struct MultiIndex {
  int n1 = 0;
  int n2 = 0;

  int order() const { return n1 + n2; }

  MultiIndex with(int mu) const {
    if (mu == 1) return {n1 + 1, n2};
    if (mu == 2) return {n1, n2 + 1};
    throw std::invalid_argument("base direction must be 1 or 2");
  }

  auto operator<=>(const MultiIndex&) const = default;
};

using ComponentId = int;

// A declared family of scalar jet coordinates. Geometric objects are stored
// through their scalar components: the du-word of the underlying geometric
// object is stripped and its form degree recorded here, so the bidegree of
// the family is (stripped_form, ghost) while each scalar component generator
// sits at form degree 0.
struct ComponentDecl {
  std::string name;
  std::vector<int> index_dims;  // e.g. {k} for X^i, {k, 2} for eta_{i,mu}
  int ghost = 0;
  int stripped_form = 0;
  std::optional<ComponentId> conjugate;
};

class ComponentTable {
 public:
  ComponentId add(ComponentDecl d) {
    decls_.push_back(std::move(d));
    return static_cast<ComponentId>(decls_.size()) - 1;
  }

  void pair(ComponentId a, ComponentId b) {
    decls_.at(a).conjugate = b;
    decls_.at(b).conjugate = a;
    if (decls_[a].ghost + decls_[b].ghost != -1)
      throw std::logic_error("conjugate pair must have ghost degrees summing to -1");
    if (decls_[a].stripped_form + decls_[b].stripped_form != 2)
      throw std::logic_error("conjugate pair must have form degrees summing to 2");
  }

  const ComponentDecl& operator[](ComponentId c) const { return decls_.at(c); }
  int size() const { return static_cast<int>(decls_.size()); }

  const std::vector<ComponentDecl>& decls() const { return decls_; }

 private:
  std::vector<ComponentDecl> decls_;
};

// A single generator of the bigraded algebra: a base one-form du^mu, a jet
// coordinate (component family, tensor indices, multi-index), or an abstract
// target-space symbol x^i (these occur only inside Poisson-tensor
// polynomials and enter jet expressions through substitution).
struct GeneratorRef {
  enum class Kind : std::uint8_t { BaseForm = 0, Jet = 1, Symbol = 2 };

  Kind kind = Kind::Jet;
  int mu = 0;                       // BaseForm: 1 or 2
  ComponentId comp = -1;            // Jet
  std::array<int, 2> idx = {0, 0};  // Jet tensor indices (unused slots 0)
  int idx_count = 0;
  MultiIndex jet;
  int symbol = 0;  // Symbol: 1..k
  int ghost = 0;   // Jet: ghost degree of the component family

  static GeneratorRef base_form(int mu) {
    GeneratorRef g;
    g.kind = Kind::BaseForm;
    g.mu = mu;
    return g;
  }

  static GeneratorRef jet_coordinate(ComponentId c, std::vector<int> indices,
                                     MultiIndex I, int ghost_degree) {
    GeneratorRef g;
    g.kind = Kind::Jet;
    g.comp = c;
    g.idx_count = static_cast<int>(indices.size());
    for (int i = 0; i < g.idx_count; ++i) g.idx[static_cast<size_t>(i)] = indices[static_cast<size_t>(i)];
    g.jet = I;
    g.ghost = ghost_degree;
    return g;
  }

  static GeneratorRef abstract_symbol(int i) {
    GeneratorRef g;
    g.kind = Kind::Symbol;
    g.symbol = i;
    return g;
  }

  BiDegree bidegree() const {
    switch (kind) {
      case Kind::BaseForm: return {1, 0};
      case Kind::Jet: return {0, ghost};
      case Kind::Symbol: return {0, 0};
    }
    return {};
  }

  int parity() const { return bidegree().parity(); }

  GeneratorRef derived(int direction) const {
    if (kind != Kind::Jet) throw std::logic_error("only jet coordinates prolong");
    GeneratorRef g = *this;
    g.jet = jet.with(direction);
    return g;
  }

  auto key() const {
    return std::tuple(kind, mu, comp, idx, idx_count, jet, symbol);
  }

  bool operator==(const GeneratorRef& o) const { return key() == o.key(); }
  auto operator<=>(const GeneratorRef& o) const { return key() <=> o.key(); }
};

// Identifies one scalar component of a family (tensor indices, no jet part).
struct ComponentKey {
  ComponentId comp = -1;
  std::array<int, 2> idx = {0, 0};
  int idx_count = 0;

  static ComponentKey of(ComponentId c, std::vector<int> indices) {
    ComponentKey k;
    k.comp = c;
    k.idx_count = static_cast<int>(indices.size());
    for (int i = 0; i < k.idx_count; ++i) k.idx[static_cast<size_t>(i)] = indices[static_cast<size_t>(i)];
    return k;
  }

  static ComponentKey of(const GeneratorRef& g) {
    ComponentKey k;
    k.comp = g.comp;
    k.idx = g.idx;
    k.idx_count = g.idx_count;
    return k;
  }

  std::vector<int> indices() const {
    return std::vector<int>(idx.begin(), idx.begin() + idx_count);
  }

  auto key() const { return std::tuple(comp, idx, idx_count); }
  bool operator==(const ComponentKey& o) const { return key() == o.key(); }
  auto operator<=>(const ComponentKey& o) const { return key() <=> o.key(); }
};

// Enumerates all index tuples of a component family in lexicographic order.
inline std::vector<std::vector<int>> index_tuples(const ComponentDecl& d) {
  std::vector<std::vector<int>> out{{}};
  for (int dim : d.index_dims) {
    std::vector<std::vector<int>> next;
    for (const auto& t : out)
      for (int v = 1; v <= dim; ++v) {
        auto u = t;
        u.push_back(v);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace psmbv
