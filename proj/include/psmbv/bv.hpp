#pragma once

#include <functional>

#include "psmbv/jet.hpp"
#include "psmbv/report.hpp"

namespace psmbv {

// Symbol table for a BV field content: plain coordinate families plus
// field/anti-field pairs. Geometric objects are recovered from stripped
// scalar components by multiplying the du-word of the family on the left.
class BVModel {
 public:
  ComponentTable table;

  // Families whose conjugates exist; "fields" are the unstarred half
  // (ghost degree >= 0) of each conjugate pair.
  std::vector<ComponentId> fields() const {
    std::vector<ComponentId> out;
    for (ComponentId c = 0; c < table.size(); ++c)
      if (table[c].conjugate && table[c].ghost >= 0) out.push_back(c);
    return out;
  }

  std::vector<ComponentId> paired_families() const {
    std::vector<ComponentId> out;
    for (ComponentId c = 0; c < table.size(); ++c)
      if (table[c].conjugate) out.push_back(c);
    return out;
  }

  ComponentId conjugate(ComponentId c) const {
    const auto& d = table[c];
    if (!d.conjugate) throw std::logic_error("family " + d.name + " has no conjugate");
    return *d.conjugate;
  }

  // Bidegree of the geometric family: (stripped form degree, ghost).
  BiDegree bidegree(ComponentId c) const {
    return {table[c].stripped_form, table[c].ghost};
  }

  GeneratorRef generator(ComponentId c, std::vector<int> indices,
                         MultiIndex I = {}) const {
    return GeneratorRef::jet_coordinate(c, std::move(indices), I, table[c].ghost);
  }

  // The geometric object of family c at field index i, e.g.
  // eta_i = du^mu eta[i,mu], X+_i = du1 du2 X+[i].
  Expr geometric(ComponentId c, int i) const {
    const auto& d = table[c];
    switch (d.stripped_form) {
      case 0:
        return Expr::generator(generator(c, {i}));
      case 1: {
        Expr out;
        for (int mu = 1; mu <= 2; ++mu)
          out += mul(Expr::generator(GeneratorRef::base_form(mu)),
                     Expr::generator(generator(c, {i, mu})));
        return out;
      }
      case 2:
        return mul(Density::volume(), Expr::generator(generator(c, {i})));
      default:
        throw std::logic_error("unsupported stripped form degree");
    }
  }

  // Scalar component keys of family c at field index i, ordered by the
  // extra form index when present.
  std::vector<ComponentKey> components(ComponentId c, int i) const {
    if (table[c].stripped_form == 1)
      return {ComponentKey::of(c, {i, 1}), ComponentKey::of(c, {i, 2})};
    return {ComponentKey::of(c, {i})};
  }

  int field_range(ComponentId c) const { return table[c].index_dims.at(0); }
};

// A local functional represented by an integrand density; equality is
// modulo the image of d_H, decided by Euler annihilation of the difference.
struct LocalFunctional {
  Density representative;

  bool equals(const LocalFunctional& o, const ComponentTable& table) const {
    return is_total_divergence(representative - o.representative, table).is_divergence;
  }
};

// The variational derivative of the representative with respect to one
// scalar component; independent of the representative.
inline Expr variational_derivative(const LocalFunctional& S, const ComponentKey& c,
                                   const ComponentTable& table) {
  return euler_lagrange(S.representative, c, table);
}

// The geometric functional-derivative form dA/dphi of family c at index i:
// the unique form W with  delta A = integral of rho /\ W  for perturbations
// rho of the family, realized through component Euler derivatives.
Expr functional_derivative_form(const Density& A, const BVModel& model, ComponentId c, int i);

// The BV antibracket of two integrands, as an integrand; well defined
// modulo d_H. Mixed ghost degrees are handled by bilinearity.
Density antibracket(const Density& A, const Density& B, const BVModel& model);

inline LocalFunctional antibracket(const LocalFunctional& A, const LocalFunctional& B,
                                   const BVModel& model) {
  return {antibracket(A.representative, B.representative, model)};
}

// (S, phi) for a single geometric generator phi of family c at index i,
// for even-parity S: (S, phi^a) = (-1)^{gh(phi^a)} dS/dphi+_a and
// (S, phi+_a) = (-1)^{gh(phi^a) + deg(phi^a)} dS/dphi^a.
Expr generator_action(const Density& S, const BVModel& model, ComponentId c, int i);

// A graded derivation determined by its images on the order-0 scalar
// components, extended to jets by D(c_I) = D_I(D(c)) and to products by the
// graded Leibniz rule. Base forms and abstract symbols are annihilated.
class GradedDerivation {
 public:
  GradedDerivation(const BVModel* model, int ghost_shift)
      : model_(model), ghost_shift_(ghost_shift) {}

  void set_image(const ComponentKey& c, Expr image) { images_[c] = std::move(image); }

  // Reads component images off a geometric image G = D(w * c) using
  // D(w * c) = (-1)^{deg w} w * D(c) for the family's du-word w.
  void set_geometric_image(ComponentId c, int i, const Expr& G);

  const Expr& image(const ComponentKey& c) const;
  int parity() const { return ((ghost_shift_ % 2) + 2) % 2; }
  int ghost_shift() const { return ghost_shift_; }

  Expr apply(const Expr& f) const;
  Expr apply_geometric(ComponentId c, int i) const;

 private:
  const BVModel* model_;
  int ghost_shift_;
  std::map<ComponentKey, Expr> images_;
};

// The derivation D = (S, .) induced by an even-parity generator S.
GradedDerivation derivation_from(const Density& S, const BVModel& model);

struct MasterEquationResult {
  bool pass = false;
  Density bracket;              // representative of (S, S)
  int witness_ghost_degree = 0; // minimal ghost degree with a nonzero witness
  ComponentKey witness_component;
  Expr witness;
};

// (S, S) must be Euler-annihilated; on failure reports the minimal-ghost-
// degree nonvanishing Euler derivative.
MasterEquationResult master_equation_check(const Density& S, const BVModel& model);

struct NilpotencyResult {
  bool pass = true;
  std::vector<std::pair<ComponentKey, Expr>> failures;  // D(D(g)) per failing generator
};

// D^2 = 0 on every order-0 generator of the model, for D = (S, .).
NilpotencyResult differential_nilpotency_check(const Density& S, const BVModel& model);
NilpotencyResult nilpotency_check(const GradedDerivation& D, const BVModel& model);

}  // namespace psmbv
