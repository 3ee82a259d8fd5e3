#include "psmbv/bv.hpp"

namespace psmbv {

namespace {

int parity_of(int n) { return ((n % 2) + 2) % 2; }

Expr du(int mu) { return Expr::generator(GeneratorRef::base_form(mu)); }

bool has_even_total_parity(const Density& S) {
  // form degree is 2 throughout, so even total parity means even ghost degree.
  for (const auto& [m, c] : S.body.terms())
    if (parity_of(m.ghost_degree()) != 0) return false;
  return true;
}

}  // namespace

Expr functional_derivative_form(const Density& A, const BVModel& model, ComponentId c, int i) {
  const auto& decl = model.table[c];
  Expr s = A.stripped();
  switch (decl.stripped_form) {
    case 0:
      return mul(Density::volume(),
                 euler_lagrange(s, ComponentKey::of(c, {i}), decl.ghost));
    case 1: {
      Expr e1 = euler_lagrange(s, ComponentKey::of(c, {i, 1}), decl.ghost);
      Expr e2 = euler_lagrange(s, ComponentKey::of(c, {i, 2}), decl.ghost);
      Expr w = mul(du(2), e1) - mul(du(1), e2);
      return parity_of(decl.ghost) == 0 ? w : Expr() - w;
    }
    case 2:
      return euler_lagrange(s, ComponentKey::of(c, {i}), decl.ghost);
    default:
      throw std::logic_error("unsupported stripped form degree");
  }
}

Density antibracket(const Density& A, const Density& B, const BVModel& model) {
  // (A,B) = sum_phi (-1)^{|phi|(|phi|+|A|)} ( dA/dphi ^ dB/dphi+
  //                                           + (-1)^{|A|} dA/dphi+ ^ dB/dphi )
  // where |phi| = gh(phi) + deg(phi) and |A| = gh(A) + deg(A); the density
  // degree is 2, so only the ghost parity of A contributes. A is split into
  // ghost-homogeneous pieces so that |A| is well defined.
  Expr out;
  for (const auto& [gA, pa] : ghost_pieces(A.body)) {
    Density Ag = Density(pa);
    const int parityA = parity_of(gA);
    for (ComponentId field : model.fields()) {
      ComponentId anti = model.conjugate(field);
      const auto& decl = model.table[field];
      const int pphi = parity_of(decl.ghost + decl.stripped_form);
      const int sign = (parity_of(pphi * (pphi + parityA)) == 0) ? 1 : -1;
      for (int i = 1; i <= model.field_range(field); ++i) {
        Expr t = mul(functional_derivative_form(Ag, model, field, i),
                     functional_derivative_form(B, model, anti, i));
        Expr u = mul(functional_derivative_form(Ag, model, anti, i),
                     functional_derivative_form(B, model, field, i));
        Expr term = t + (parityA == 0 ? u : Expr() - u);
        out += (sign == 1) ? term : Expr() - term;
      }
    }
  }
  return Density(out);
}

Expr generator_action(const Density& S, const BVModel& model, ComponentId c, int i) {
  if (!has_even_total_parity(S))
    throw std::invalid_argument("generator_action requires an even-parity generator S");
  const auto& decl = model.table[c];
  if (!decl.conjugate) throw std::logic_error("family " + decl.name + " has no conjugate");
  if (decl.ghost >= 0) {
    // (S, phi^a) = (-1)^{|phi^a|} dS/dphi+_a with |phi| = gh(phi) + deg(phi)
    Expr w = functional_derivative_form(S, model, model.conjugate(c), i);
    return parity_of(decl.ghost + decl.stripped_form) == 0 ? w : Expr() - w;
  }
  // (S, phi+_a) = (-1)^{|phi^a|} dS/dphi^a
  ComponentId field = model.conjugate(c);
  const auto& fd = model.table[field];
  Expr w = functional_derivative_form(S, model, field, i);
  return parity_of(fd.ghost + fd.stripped_form) == 0 ? w : Expr() - w;
}

void GradedDerivation::set_geometric_image(ComponentId c, int i, const Expr& G) {
  const auto& decl = model_->table[c];
  const int sign = (parity_of(parity() * decl.stripped_form) == 0) ? 1 : -1;
  auto signed_expr = [&](Expr e) { return sign == 1 ? e : Expr() - e; };
  switch (decl.stripped_form) {
    case 0:
      set_image(ComponentKey::of(c, {i}), signed_expr(G));
      break;
    case 1:
      for (int mu = 1; mu <= 2; ++mu)
        set_image(ComponentKey::of(c, {i, mu}),
                  signed_expr(left_partial(G, GeneratorRef::base_form(mu))));
      break;
    case 2:
      set_image(ComponentKey::of(c, {i}),
                signed_expr(left_partial(left_partial(G, GeneratorRef::base_form(1)),
                                         GeneratorRef::base_form(2))));
      break;
    default:
      throw std::logic_error("unsupported stripped form degree");
  }
}

const Expr& GradedDerivation::image(const ComponentKey& c) const {
  static const Expr zero;
  auto it = images_.find(c);
  return it == images_.end() ? zero : it->second;
}

Expr GradedDerivation::apply(const Expr& f) const {
  Expr out;
  for (const auto& [m, coeff] : f.terms()) {
    Expr mexpr(m, coeff);
    auto visit = [&](const GeneratorRef& g) {
      if (g.kind != GeneratorRef::Kind::Jet) return;
      const Expr& img0 = image(ComponentKey::of(g));
      if (img0.is_zero()) return;
      out += mul(total_derivative(img0, g.jet), left_partial(mexpr, g));
    };
    for (const auto& g : m.odds) visit(g);
    for (const auto& [g, e] : m.evens) visit(g);
  }
  return out;
}

Expr GradedDerivation::apply_geometric(ComponentId c, int i) const {
  return apply(model_->geometric(c, i));
}

GradedDerivation derivation_from(const Density& S, const BVModel& model) {
  GradedDerivation D(&model, 1);
  for (ComponentId c : model.paired_families())
    for (int i = 1; i <= model.field_range(c); ++i)
      D.set_geometric_image(c, i, generator_action(S, model, c, i));
  return D;
}

MasterEquationResult master_equation_check(const Density& S, const BVModel& model) {
  MasterEquationResult out;
  out.bracket = antibracket(S, S, model);
  auto div = is_total_divergence(out.bracket, model.table);
  out.pass = div.is_divergence;
  if (!out.pass) {
    // minimal-ghost-degree nonvanishing Euler witness
    for (const auto& [g, piece] : ghost_pieces(out.bracket.body)) {
      auto d = is_total_divergence(Density(piece), model.table);
      if (!d.is_divergence) {
        out.witness_ghost_degree = g;
        out.witness_component = d.witness_component;
        out.witness = d.witness;
        break;
      }
    }
  }
  return out;
}

NilpotencyResult nilpotency_check(const GradedDerivation& D, const BVModel& model) {
  NilpotencyResult out;
  for (ComponentId c = 0; c < model.table.size(); ++c) {
    for (const auto& t : index_tuples(model.table[c])) {
      Expr g = Expr::generator(model.generator(c, t));
      Expr dd = D.apply(D.apply(g));
      if (!dd.is_zero()) {
        out.pass = false;
        out.failures.emplace_back(ComponentKey::of(c, t), dd);
      }
    }
  }
  return out;
}

NilpotencyResult differential_nilpotency_check(const Density& S, const BVModel& model) {
  return nilpotency_check(derivation_from(S, model), model);
}

}  // namespace psmbv
