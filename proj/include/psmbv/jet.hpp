#pragma once

#include "psmbv/expr.hpp"

namespace psmbv {

// Even derivation sending a jet coordinate (c, I) to (c, I u {mu}) and base
// one-forms and abstract symbols to zero.
inline Expr total_derivative(const Expr& f, int mu) {
  Expr out;
  for (const auto& [m, c] : f.terms()) {
    Expr mexpr(m, c);
    auto visit = [&](const GeneratorRef& g) {
      if (g.kind != GeneratorRef::Kind::Jet) return;
      out += mul(Expr::generator(g.derived(mu)), left_partial(mexpr, g));
    };
    for (const auto& g : m.odds) visit(g);
    for (const auto& [g, e] : m.evens) visit(g);
  }
  return out;
}

inline Expr total_derivative(const Expr& f, const MultiIndex& I) {
  Expr out = f;
  for (int i = 0; i < I.n1; ++i) out = total_derivative(out, 1);
  for (int i = 0; i < I.n2; ++i) out = total_derivative(out, 2);
  return out;
}

// d_H = du^mu D_mu, with the du factor multiplied on the left.
inline Expr horizontal_differential(const Expr& f) {
  return mul(Expr::generator(GeneratorRef::base_form(1)), total_derivative(f, 1)) +
         mul(Expr::generator(GeneratorRef::base_form(2)), total_derivative(f, 2));
}

// A top-form-degree integrand: every monomial carries du1*du2.
struct Density {
  Expr body;

  Density() = default;
  explicit Density(Expr e) : body(std::move(e)) {
    if (!is_form_homogeneous(body, 2))
      throw std::invalid_argument("density must be form-homogeneous of degree 2");
  }

  static const Expr& volume() {
    static const Expr vol = mul(Expr::generator(GeneratorRef::base_form(1)),
                                Expr::generator(GeneratorRef::base_form(2)));
    return vol;
  }

  static Density from_scalar(const Expr& s) { return Density(mul(volume(), s)); }

  // The scalar obtained by deleting the du1*du2 factor of every monomial.
  Expr stripped() const {
    return left_partial(left_partial(body, GeneratorRef::base_form(1)),
                        GeneratorRef::base_form(2));
  }

  Density operator+(const Density& o) const {
    Density d;
    d.body = body + o.body;
    return d;
  }
  Density operator-(const Density& o) const {
    Density d;
    d.body = body - o.body;
    return d;
  }
};

// Multi-indices of a component occurring in f.
inline std::set<MultiIndex> jet_orders(const Expr& f, const ComponentKey& c) {
  std::set<MultiIndex> out;
  for (const auto& [m, coeff] : f.terms()) {
    for (const auto& g : m.odds)
      if (g.kind == GeneratorRef::Kind::Jet && ComponentKey::of(g) == c) out.insert(g.jet);
    for (const auto& [g, e] : m.evens)
      if (g.kind == GeneratorRef::Kind::Jet && ComponentKey::of(g) == c) out.insert(g.jet);
  }
  return out;
}

// E_c(F) = sum_I (-1)^|I| D_I(dF/du^c_I) on stripped scalar expressions.
inline Expr euler_lagrange(const Expr& stripped, const ComponentKey& c, int ghost) {
  Expr out;
  for (const auto& I : jet_orders(stripped, c)) {
    GeneratorRef g = GeneratorRef::jet_coordinate(c.comp, c.indices(), I, ghost);
    Expr d = total_derivative(left_partial(stripped, g), I);
    out += (I.order() % 2 == 0) ? d : Expr() - d;
  }
  return out;
}

inline Expr euler_lagrange(const Density& L, const ComponentKey& c, const ComponentTable& table) {
  return euler_lagrange(L.stripped(), c, table[c.comp].ghost);
}

struct DivergenceResult {
  bool is_divergence = true;
  ComponentKey witness_component;
  Expr witness;  // first nonvanishing Euler derivative
};

// Decides d_H-exactness of a top form by Euler annihilation over every
// declared coordinate family.
inline DivergenceResult is_total_divergence(const Density& F, const ComponentTable& table) {
  Expr s = F.stripped();
  for (ComponentId c = 0; c < table.size(); ++c) {
    for (const auto& t : index_tuples(table[c])) {
      Expr e = euler_lagrange(s, ComponentKey::of(c, t), table[c].ghost);
      if (!e.is_zero()) return {false, ComponentKey::of(c, t), e};
    }
  }
  return {};
}

// Z = sum_J Z^J D_J with finitely many nonzero coefficients.
struct TotalDifferentialOperator {
  std::map<MultiIndex, Expr> coefficients;

  Expr apply(const Expr& f) const {
    Expr out;
    for (const auto& [J, z] : coefficients) out += mul(z, total_derivative(f, J));
    return out;
  }
};

// Z+(F) = sum_J (-D)_J (Z^J F).
inline Expr adjoint_apply(const TotalDifferentialOperator& Z, const Expr& F) {
  Expr out;
  for (const auto& [J, z] : Z.coefficients) {
    Expr d = total_derivative(mul(z, F), J);
    out += (J.order() % 2 == 0) ? d : Expr() - d;
  }
  return out;
}

// Q = Q^a d/du^a with local-function components.
struct EvolutionaryVectorField {
  std::map<ComponentKey, Expr> components;
};

// pr(Q)(F) = sum_{a,J} D_J(Q^a) * dF/du^a_J (graded product, Q^a on the left).
inline Expr prolong_apply(const EvolutionaryVectorField& Q, const Expr& F,
                          const ComponentTable& table) {
  Expr out;
  for (const auto& [c, q] : Q.components) {
    for (const auto& J : jet_orders(F, c)) {
      GeneratorRef g = GeneratorRef::jet_coordinate(c.comp, c.indices(), J, table[c.comp].ghost);
      out += mul(total_derivative(q, J), left_partial(F, g));
    }
  }
  return out;
}

struct SymmetryResult {
  bool is_symmetry = false;
  DivergenceResult detail;
};

// Q is variational iff sum_a Q^a E_a(L) is a divergence; cross-checked
// against pr(Q)(L) being a divergence.
inline SymmetryResult variational_symmetry_check(const EvolutionaryVectorField& Q,
                                                 const Density& L, const ComponentTable& table) {
  Expr s = L.stripped();
  Expr qe;
  for (const auto& [c, q] : Q.components)
    qe += mul(q, euler_lagrange(s, c, table[c.comp].ghost));
  auto via_euler = is_total_divergence(Density::from_scalar(qe), table);
  auto via_prolong = is_total_divergence(Density::from_scalar(prolong_apply(Q, s, table)), table);
  if (via_euler.is_divergence != via_prolong.is_divergence)
    throw std::logic_error("variational symmetry routes disagree");
  return {via_euler.is_divergence, via_euler};
}

// Per gauge-parameter index rho and field component c, the operator R^{c,rho}
// whose coefficients are the R^{aI} of the gauge family.
struct GaugeSymmetryFamily {
  std::map<std::pair<std::vector<int>, ComponentKey>, TotalDifferentialOperator> entries;
  std::vector<std::vector<int>> parameter_indices;
};

struct NoetherResult {
  std::map<std::vector<int>, Expr> identities;  // N^rho per parameter index
  bool all_zero = true;
};

// N^rho = sum_{a,I} (-1)^|I| D_I(R^{a,rho,I} E_a(L)).
inline NoetherResult noether_from_gauge(const GaugeSymmetryFamily& R, const Density& L,
                                        const ComponentTable& table) {
  Expr s = L.stripped();
  std::map<ComponentKey, Expr> euler;
  NoetherResult out;
  for (const auto& rho : R.parameter_indices) out.identities[rho] = Expr();
  for (const auto& [key, Z] : R.entries) {
    const auto& [rho, c] = key;
    auto it = euler.find(c);
    if (it == euler.end())
      it = euler.emplace(c, euler_lagrange(s, c, table[c.comp].ghost)).first;
    out.identities[rho] += adjoint_apply(Z, it->second);
  }
  for (const auto& [rho, n] : out.identities)
    if (!n.is_zero()) out.all_zero = false;
  return out;
}

}  // namespace psmbv
