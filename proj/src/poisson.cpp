#include "psmbv/poisson.hpp"

namespace psmbv {

namespace {

void require_symbol_polynomial(const Expr& e, int k) {
  for (const auto& [m, c] : e.terms()) {
    if (m.du_mask != 0 || !m.odds.empty())
      throw std::invalid_argument("Poisson tensor entries must be polynomials in x1..xk");
    for (const auto& [g, n] : m.evens) {
      if (g.kind != GeneratorRef::Kind::Symbol || g.symbol < 1 || g.symbol > k)
        throw std::invalid_argument("Poisson tensor entries must be polynomials in x1..xk");
    }
  }
}

}  // namespace

PoissonTensor::PoissonTensor(int k, std::map<std::pair<int, int>, Expr> upper_entries)
    : k_(k), entries_(static_cast<size_t>(k) * static_cast<size_t>(k)) {
  if (k < 1) throw std::invalid_argument("dimension must be positive");
  for (const auto& [ij, e] : upper_entries) {
    auto [i, j] = ij;
    if (i < 1 || j < 1 || i > k || j > k)
      throw std::invalid_argument("Poisson tensor index out of range");
    if (i == j)
      throw std::invalid_argument("diagonal Poisson tensor entries must vanish");
    if (i > j) throw std::invalid_argument("entries must be given with i < j");
    require_symbol_polynomial(e, k);
    entries_[static_cast<size_t>((i - 1) * k_ + (j - 1))] = e;
    entries_[static_cast<size_t>((j - 1) * k_ + (i - 1))] = Expr() - e;
  }
}

const Expr& PoissonTensor::entry(int i, int j) const {
  if (i < 1 || j < 1 || i > k_ || j > k_)
    throw std::out_of_range("Poisson tensor index out of range");
  return entries_[static_cast<size_t>((i - 1) * k_ + (j - 1))];
}

Expr PoissonTensor::partial(int l, int i, int j) const {
  return left_partial(entry(i, j), GeneratorRef::abstract_symbol(l));
}

bool PoissonTensor::is_constant() const {
  for (const auto& e : entries_)
    for (const auto& [m, c] : e.terms())
      if (!m.is_one()) return false;
  return true;
}

int PoissonTensor::max_polynomial_degree() const {
  int d = 0;
  for (const auto& e : entries_)
    for (const auto& [m, c] : e.terms()) {
      int md = 0;
      for (const auto& [g, n] : m.evens) md += n;
      d = std::max(d, md);
    }
  return d;
}

PoissonTensor::JacobiResult PoissonTensor::jacobi_check() const {
  for (int i = 1; i <= k_; ++i)
    for (int j = 1; j <= k_; ++j)
      for (int k = 1; k <= k_; ++k) {
        Expr sum;
        for (int l = 1; l <= k_; ++l) {
          sum += mul(entry(i, l), partial(l, j, k));
          sum += mul(entry(j, l), partial(l, k, i));
          sum += mul(entry(k, l), partial(l, i, j));
        }
        if (!sum.is_zero()) return {false, {i, j, k}, sum};
      }
  return {};
}

}  // namespace psmbv
