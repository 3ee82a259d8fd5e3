#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "psmbv/bv.hpp"

using namespace psmbv;

namespace {

// Toy BV content: one scalar field phi with ghost c, their antifields, and a
// one-form pair a / a+ to exercise the du-word bookkeeping.
struct Toy {
  BVModel model;
  ComponentId phi, c, phip, cp, a, ap;

  Toy() {
    phi = model.table.add({"phi", {1}, 0, 0, std::nullopt});
    c = model.table.add({"c", {1}, 1, 0, std::nullopt});
    phip = model.table.add({"phi+", {1}, -1, 2, std::nullopt});
    cp = model.table.add({"c+", {1}, -2, 2, std::nullopt});
    a = model.table.add({"a", {1, 2}, 0, 1, std::nullopt});
    ap = model.table.add({"a+", {1, 2}, -1, 1, std::nullopt});
    model.table.pair(phi, phip);
    model.table.pair(c, cp);
    model.table.pair(a, ap);
  }

  Expr g(ComponentId comp, std::vector<int> idx, MultiIndex I = {}) const {
    return Expr::generator(model.generator(comp, std::move(idx), I));
  }
};

// mode 0: all families; mode 1: only the volume-paired families (phi, c and
// their anti-partners); mode 2: only the one-form pair a / a+; mode 3: all
// families but no jet coordinates.
Expr random_scalar(const Toy& t, std::mt19937& rng, int mode = 0) {
  std::vector<GeneratorRef> gens;
  if (mode != 2) {
    gens.push_back(t.model.generator(t.phi, {1}));
    gens.push_back(t.model.generator(t.c, {1}));
    gens.push_back(t.model.generator(t.phip, {1}));
    gens.push_back(t.model.generator(t.cp, {1}));
    if (mode != 3) {
      gens.push_back(t.model.generator(t.phi, {1}, {1, 0}));
      gens.push_back(t.model.generator(t.c, {1}, {0, 1}));
    }
  }
  if (mode != 1) {
    gens.push_back(t.model.generator(t.a, {1, 1}));
    gens.push_back(t.model.generator(t.ap, {1, 2}));
  }
  std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> nterms(1, 2), len(1, 3), coeff(-2, 2);
  Expr out;
  for (int k = 0, n = nterms(rng); k < n; ++k) {
    Expr term(Rational(coeff(rng)));
    for (int i = 0, m = len(rng); i < m; ++i) term = mul(term, Expr::generator(gens[pick(rng)]));
    out += term;
  }
  return out;
}

int ghost_parity(const Expr& e) {
  auto degs = bidegrees(e);
  REQUIRE(degs.size() == 1);
  return ((degs.begin()->ghost % 2) + 2) % 2;
}

}  // namespace

TEST_CASE("model bookkeeping") {
  Toy t;
  CHECK(t.model.fields() == std::vector<ComponentId>{t.phi, t.c, t.a});
  CHECK(t.model.conjugate(t.phi) == t.phip);
  CHECK(t.model.conjugate(t.ap) == t.a);
  CHECK(t.model.bidegree(t.a) == BiDegree{1, 0});
  CHECK(t.model.bidegree(t.cp) == BiDegree{2, -2});
  // geometric objects carry their du-words on the left
  Expr a1 = t.model.geometric(t.a, 1);
  Expr expect = mul(Expr::generator(GeneratorRef::base_form(1)), t.g(t.a, {1, 1})) +
                mul(Expr::generator(GeneratorRef::base_form(2)), t.g(t.a, {1, 2}));
  CHECK(a1 == expect);
  CHECK(t.model.geometric(t.phip, 1) == mul(Density::volume(), t.g(t.phip, {1})));
}

TEST_CASE("functional derivative form of a volume family") {
  Toy t;
  Expr p1 = t.g(t.phi, {1}, {1, 0});
  Density A = Density::from_scalar(Rational(1, 2) * mul(p1, p1));
  // W = vol * E_phi(L) = -vol * phi_{(2,0)}
  Expr W = functional_derivative_form(A, t.model, t.phi, 1);
  CHECK(W == -mul(Density::volume(), t.g(t.phi, {1}, {2, 0})));
}

TEST_CASE("antibracket grading and antisymmetry modulo divergences") {
  // The odd bracket satisfies
  //   (A,B) = -(-1)^{(|A|+1)(|B|+1)} (B,A)   modulo total divergences,
  // where |.| is Grassmann parity. The two modes exercise the volume-paired
  // and the one-form conjugate pairs separately.
  Toy t;
  std::mt19937 rng(2026);
  for (int mode : {1, 2}) {
    int checked = 0;
    for (int trial = 0; trial < 1000 && checked < 300; ++trial) {
      auto pieces_a = ghost_pieces(random_scalar(t, rng, mode));
      auto pieces_b = ghost_pieces(random_scalar(t, rng, mode));
      if (pieces_a.empty() || pieces_b.empty()) continue;
      Expr sa = pieces_a.begin()->second, sb = pieces_b.begin()->second;
      Density A = Density::from_scalar(sa), B = Density::from_scalar(sb);
      Density AB = antibracket(A, B, t.model);
      Density BA = antibracket(B, A, t.model);
      if (!AB.body.is_zero()) {
        // gh(A,B) = gh A + gh B + 1 on the integrand scalars
        int gha = bidegrees(sa).begin()->ghost, ghb = bidegrees(sb).begin()->ghost;
        CHECK(is_ghost_homogeneous(AB.body, gha + ghb + 1));
      }
      int sign = ((ghost_parity(sa) + 1) * (ghost_parity(sb) + 1)) % 2 ? -1 : 1;
      Density defect = AB + Density(Rational(sign) * BA.body);
      CAPTURE(mode);
      CAPTURE(trial);
      CHECK(is_total_divergence(defect, t.model.table).is_divergence);
      ++checked;
    }
    CHECK(checked >= 260);
  }
}

TEST_CASE("antibracket Leibniz rule modulo divergences") {
  // Two formulations on random inputs:
  //  (a) at the density level, (A,BC) = (A,B)C + (-1)^{(|A|+1)|B|} B(A,C)
  //      modulo total divergences, for jet-free B and C of either parity;
  //  (b) for even A the induced derivation D_A = (A,.) is a graded derivation
  //      on the full jet algebra, and (A,BC) agrees with D_A(BC) modulo
  //      total divergences even when B, C carry jet coordinates.
  Toy t;
  std::mt19937 rng(424242);

  int checked = 0;
  for (int trial = 0; trial < 2600 && checked < 520; ++trial) {
    auto pieces_a = ghost_pieces(random_scalar(t, rng, 3));
    auto pieces_b = ghost_pieces(random_scalar(t, rng, 3));
    auto pieces_c = ghost_pieces(random_scalar(t, rng, 3));
    if (pieces_a.empty() || pieces_b.empty() || pieces_c.empty()) continue;
    Expr sa = pieces_a.begin()->second, sb = pieces_b.begin()->second,
         sc = pieces_c.begin()->second;
    Density A = Density::from_scalar(sa), B = Density::from_scalar(sb),
            C = Density::from_scalar(sc);
    Density ABC = antibracket(A, Density::from_scalar(mul(sb, sc)), t.model);
    Expr ab = antibracket(A, B, t.model).stripped();
    Expr ac = antibracket(A, C, t.model).stripped();
    int sgn = ((ghost_parity(sa) + 1) * ghost_parity(sb)) % 2;
    Expr rhs = mul(ab, sc) + (sgn ? Expr() - mul(sb, ac) : mul(sb, ac));
    Density defect = ABC + Density(Expr() - Density::from_scalar(rhs).body);
    CAPTURE(trial);
    CHECK(is_total_divergence(defect, t.model.table).is_divergence);
    ++checked;
  }
  CHECK(checked >= 520);

  checked = 0;
  for (int trial = 0; trial < 2600 && checked < 520; ++trial) {
    auto pieces_a = ghost_pieces(random_scalar(t, rng));
    auto pieces_b = ghost_pieces(random_scalar(t, rng));
    auto pieces_c = ghost_pieces(random_scalar(t, rng));
    if (pieces_a.empty() || pieces_b.empty() || pieces_c.empty()) continue;
    Expr sa;
    for (const auto& [g, piece] : pieces_a)
      if (((g % 2) + 2) % 2 == 0) { sa = piece; break; }
    if (sa.is_zero()) continue;
    Expr sb = pieces_b.begin()->second, sc = pieces_c.begin()->second;
    Density A = Density::from_scalar(sa);
    GradedDerivation D = derivation_from(A, t.model);
    int sgn = ((ghost_parity(sa) + 1) * ghost_parity(sb)) % 2;
    Expr lhs = D.apply(mul(sb, sc));
    Expr rhs = mul(D.apply(sb), sc) +
               (sgn ? Expr() - mul(sb, D.apply(sc)) : mul(sb, D.apply(sc)));
    CAPTURE(trial);
    CHECK(lhs == rhs);
    Density ABC = antibracket(A, Density::from_scalar(mul(sb, sc)), t.model);
    Density defect = ABC + Density(Expr() - Density::from_scalar(lhs).body);
    CHECK(is_total_divergence(defect, t.model.table).is_divergence);
    ++checked;
  }
  CHECK(checked >= 520);
}

TEST_CASE("antibracket pairing is canonical on coordinates") {
  Toy t;
  // A = vol*phi, B = vol*phi+ pair to a constant; unrelated pairs vanish.
  Density A = Density::from_scalar(t.g(t.phi, {1}));
  Density B = Density::from_scalar(t.g(t.phip, {1}));
  Density AB = antibracket(A, B, t.model);
  auto piece = AB.stripped();
  CHECK(!piece.is_zero());
  CHECK(is_ghost_homogeneous(piece, 0));
  Density C = Density::from_scalar(t.g(t.cp, {1}));
  CHECK(antibracket(A, C, t.model).body.is_zero());
}

TEST_CASE("shift gauge theory satisfies the master equation") {
  Toy t;
  // S = integral phi+ c : the BV action of the shift symmetry of L = 0.
  Density S = Density::from_scalar(mul(t.g(t.phip, {1}), t.g(t.c, {1})));
  auto m = master_equation_check(S, t.model);
  CHECK(m.pass);

  auto n = differential_nilpotency_check(S, t.model);
  CHECK(n.pass);

  // images of the induced differential
  GradedDerivation D = derivation_from(S, t.model);
  CHECK(D.parity() == 1);
  CHECK(D.apply(t.g(t.phi, {1})) == t.g(t.c, {1}));
  CHECK(D.apply(t.g(t.c, {1})).is_zero());
  CHECK(D.apply(D.apply(t.g(t.cp, {1}))).is_zero());
  // jets transform through prolongation
  CHECK(D.apply(t.g(t.phi, {1}, {1, 0})) == t.g(t.c, {1}, {1, 0}));
}

TEST_CASE("mass term obstructs the shift master equation") {
  Toy t;
  Expr phi = t.g(t.phi, {1});
  Density S = Density::from_scalar(mul(t.g(t.phip, {1}), t.g(t.c, {1})) +
                                   Rational(1, 2) * mul(phi, phi));
  auto m = master_equation_check(S, t.model);
  CHECK(!m.pass);
  CHECK(!m.witness.is_zero());
  auto n = differential_nilpotency_check(S, t.model);
  CHECK(!n.pass);
  CHECK(!n.failures.empty());
}

TEST_CASE("derivation matches generator action on geometric objects") {
  Toy t;
  Density S = Density::from_scalar(mul(t.g(t.phip, {1}), t.g(t.c, {1})) +
                                   mul(t.g(t.ap, {1, 1}), t.g(t.c, {1}, {0, 1})));
  GradedDerivation D = derivation_from(S, t.model);
  for (ComponentId c : t.model.paired_families())
    for (int i = 1; i <= t.model.field_range(c); ++i)
      CHECK(D.apply_geometric(c, i) == generator_action(S, t.model, c, i));
}

TEST_CASE("geometric image round trip") {
  // A graded derivation maps a component of ghost parity p to an image of
  // ghost parity p + parity(D); set_geometric_image assumes this, so the
  // random images are filtered to the consistent parity.
  Toy t;
  std::mt19937 rng(5);
  auto piece_of_parity = [&](int parity) {
    for (int attempt = 0; attempt < 64; ++attempt)
      for (const auto& [g, p] : ghost_pieces(random_scalar(t, rng)))
        if (((g % 2) + 2) % 2 == parity) return p;
    return Expr();
  };
  for (int shift : {1, -1, 2}) {
    const int dp = ((shift % 2) + 2) % 2;
    GradedDerivation D(&t.model, shift);
    Expr G = mul(Expr::generator(GeneratorRef::base_form(1)), piece_of_parity(dp)) +
             mul(Expr::generator(GeneratorRef::base_form(2)), piece_of_parity(dp));
    D.set_geometric_image(t.a, 1, G);
    CHECK(D.apply_geometric(t.a, 1) == G);
    GradedDerivation E(&t.model, shift);
    // phi+ has odd ghost parity
    Expr H = mul(Density::volume(), piece_of_parity((dp + 1) % 2));
    E.set_geometric_image(t.phip, 1, H);
    CHECK(E.apply_geometric(t.phip, 1) == H);
  }
}

TEST_CASE("local functional equality is modulo divergences") {
  Toy t;
  Expr phi = t.g(t.phi, {1});
  LocalFunctional A{Density::from_scalar(mul(phi, t.g(t.phi, {1}, {1, 0})))};
  // the integrand is D_1(phi^2)/2, so A equals zero as a functional
  LocalFunctional Z{Density{}};
  CHECK(A.equals(Z, t.model.table));
  LocalFunctional B{Density::from_scalar(mul(phi, phi))};
  CHECK(!B.equals(Z, t.model.table));
}
