#pragma once

#include "psmbv/expr.hpp"

namespace psmbv {

// Skew k x k array of polynomials in the abstract target coordinates
// x1..xk with rational coefficients. Skew-symmetry is enforced at
// construction; the Jacobi condition is a check, not an invariant, so
// non-Poisson inputs can be exercised.
class PoissonTensor {
 public:
  PoissonTensor(int k, std::map<std::pair<int, int>, Expr> upper_entries);

  int dimension() const { return k_; }

  // alpha^{ij} as a polynomial in abstract symbols.
  const Expr& entry(int i, int j) const;

  // d alpha^{ij} / d x^l, still abstract.
  Expr partial(int l, int i, int j) const;

  bool is_constant() const;
  int max_polynomial_degree() const;

  struct JacobiResult {
    bool holds = true;
    std::array<int, 3> witness_triple = {0, 0, 0};
    Expr witness;
  };

  // Cyclic sum alpha^{il} d_l alpha^{jk} + alpha^{jl} d_l alpha^{ki} +
  // alpha^{kl} d_l alpha^{ij}, checked for all index triples.
  JacobiResult jacobi_check() const;

 private:
  int k_;
  std::vector<Expr> entries_;  // row-major k*k, fully skew-completed
};

}  // namespace psmbv
