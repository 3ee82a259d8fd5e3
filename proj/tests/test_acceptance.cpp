// Acceptance suite: one top-level check per shipped guarantee, each printed
// as a single pass/fail line. Exits nonzero if any criterion fails.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "psmbv/model_file.hpp"
#include "psmbv/psm.hpp"

using namespace psmbv;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, bool pass, const std::string& note = "") {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion-" << number << ": " << name;
  if (!note.empty()) std::cout << "  (" << note << ")";
  std::cout << '\n';
  if (!pass) ++failures;
}

std::vector<PoissonTensor> poisson_fixtures() {
  return {fixture_constant_symplectic(), fixture_so3(), fixture_quadratic()};
}

// Independent brute-force Jacobiator: sum_m a^{im} d_m a^{jk} + cyclic,
// expanded monomial by monomial, no reuse of PoissonTensor::jacobi_check.
bool brute_force_jacobi(const PoissonTensor& a) {
  const int k = a.dimension();
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      for (int l = j + 1; l <= k; ++l) {
        Expr jac;
        for (int m = 1; m <= k; ++m) {
          jac += mul(a.entry(i, m), a.partial(m, j, l));
          jac += mul(a.entry(j, m), a.partial(m, l, i));
          jac += mul(a.entry(l, m), a.partial(m, i, j));
        }
        if (!jac.is_zero()) return false;
      }
  return true;
}

struct LawToy {
  BVModel model;
  ComponentId phi, c, phip, cp;
  LawToy() {
    phi = model.table.add({"phi", {1}, 0, 0, std::nullopt});
    c = model.table.add({"c", {1}, 1, 0, std::nullopt});
    phip = model.table.add({"phi+", {1}, -1, 2, std::nullopt});
    cp = model.table.add({"c+", {1}, -2, 2, std::nullopt});
    model.table.pair(phi, phip);
    model.table.pair(c, cp);
  }
  Expr random_scalar(std::mt19937& rng, bool jets = true) const {
    std::vector<GeneratorRef> gens = {model.generator(phi, {1}), model.generator(c, {1}),
                                      model.generator(phip, {1}), model.generator(cp, {1})};
    if (jets) {
      gens.push_back(model.generator(phi, {1}, {1, 0}));
      gens.push_back(model.generator(c, {1}, {0, 1}));
    }
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> nterms(1, 2), len(1, 3), coeff(-2, 2);
    Expr out;
    for (int t = 0, n = nterms(rng); t < n; ++t) {
      Expr term(Rational(coeff(rng)));
      for (int i = 0, m = len(rng); i < m; ++i) term = mul(term, Expr::generator(gens[pick(rng)]));
      out += term;
    }
    return out;
  }
};

int ghost_parity(const Expr& e) {
  return ((bidegrees(e).begin()->ghost % 2) + 2) % 2;
}

bool engine_laws() {
  LawToy t;
  std::mt19937 rng(97531);
  const int N = 520;

  // graded commutativity and associativity
  for (int trial = 0; trial < N; ++trial) {
    Expr f = t.random_scalar(rng), g = t.random_scalar(rng), h = t.random_scalar(rng);
    if (!(mul(mul(f, g), h) == mul(f, mul(g, h)))) return false;
    for (const auto& [gf, pf] : ghost_pieces(f))
      for (const auto& [gg, pg] : ghost_pieces(g)) {
        int sgn = (((gf % 2) * (gg % 2)) % 2 + 2) % 2;
        Expr comm = mul(pf, pg) + (sgn ? mul(pg, pf) : Expr() - mul(pg, pf));
        if (!comm.is_zero()) return false;
      }
  }
  // d_H squared vanishes
  for (int trial = 0; trial < N; ++trial)
    if (!horizontal_differential(horizontal_differential(t.random_scalar(rng))).is_zero())
      return false;
  // Euler operators annihilate total divergences
  for (int trial = 0; trial < N; ++trial) {
    Expr div = total_derivative(t.random_scalar(rng), 1) + total_derivative(t.random_scalar(rng), 2);
    if (!is_total_divergence(Density::from_scalar(div), t.model.table).is_divergence) return false;
  }
  // adjoint defect is a divergence
  TotalDifferentialOperator Z;
  Z.coefficients[{0, 0}] = Expr::generator(t.model.generator(t.phi, {1}));
  Z.coefficients[{1, 0}] = Expr(Rational(2));
  Z.coefficients[{1, 1}] = Expr::generator(t.model.generator(t.phi, {1}, {1, 0}));
  for (int trial = 0; trial < N; ++trial) {
    Expr f, g;  // even inputs only: select even ghost pieces
    for (const auto& [gh, p] : ghost_pieces(t.random_scalar(rng)))
      if (((gh % 2) + 2) % 2 == 0) f += p;
    for (const auto& [gh, p] : ghost_pieces(t.random_scalar(rng)))
      if (((gh % 2) + 2) % 2 == 0) g += p;
    Expr defect = mul(f, Z.apply(g)) - mul(adjoint_apply(Z, f), g);
    if (!is_total_divergence(Density::from_scalar(defect), t.model.table).is_divergence)
      return false;
  }
  // prolongations commute with total derivatives
  EvolutionaryVectorField Q;
  Q.components[ComponentKey::of(t.phi, {1})] =
      mul(Expr::generator(t.model.generator(t.phi, {1})), Expr::generator(t.model.generator(t.phi, {1})));
  for (int trial = 0; trial < N; ++trial) {
    Expr f;
    for (const auto& [gh, p] : ghost_pieces(t.random_scalar(rng)))
      if (((gh % 2) + 2) % 2 == 0) f += p;
    if (!(prolong_apply(Q, total_derivative(f, 1), t.model.table) ==
          total_derivative(prolong_apply(Q, f, t.model.table), 1)))
      return false;
  }
  // antibracket antisymmetry modulo d_H
  int checked = 0;
  for (int trial = 0; trial < 4 * N && checked < N; ++trial) {
    auto pa = ghost_pieces(t.random_scalar(rng, false));
    auto pb = ghost_pieces(t.random_scalar(rng, false));
    if (pa.empty() || pb.empty()) continue;
    Expr sa = pa.begin()->second, sb = pb.begin()->second;
    Density A = Density::from_scalar(sa), B = Density::from_scalar(sb);
    Density AB = antibracket(A, B, t.model), BA = antibracket(B, A, t.model);
    int sign = ((ghost_parity(sa) + 1) * (ghost_parity(sb) + 1)) % 2 ? -1 : 1;
    Density defect = AB + Density(Rational(sign) * BA.body);
    if (!is_total_divergence(defect, t.model.table).is_divergence) return false;
    ++checked;
  }
  if (checked < N) return false;
  // antibracket Leibniz rule modulo d_H
  checked = 0;
  for (int trial = 0; trial < 4 * N && checked < N; ++trial) {
    auto pa = ghost_pieces(t.random_scalar(rng, false));
    auto pb = ghost_pieces(t.random_scalar(rng, false));
    auto pc = ghost_pieces(t.random_scalar(rng, false));
    if (pa.empty() || pb.empty() || pc.empty()) continue;
    Expr sa = pa.begin()->second, sb = pb.begin()->second, sc = pc.begin()->second;
    Density A = Density::from_scalar(sa);
    Density ABC = antibracket(A, Density::from_scalar(mul(sb, sc)), t.model);
    Expr ab = antibracket(A, Density::from_scalar(sb), t.model).stripped();
    Expr ac = antibracket(A, Density::from_scalar(sc), t.model).stripped();
    int sgn = ((ghost_parity(sa) + 1) * ghost_parity(sb)) % 2;
    Expr rhs = mul(ab, sc) + (sgn ? Expr() - mul(sb, ac) : mul(sb, ac));
    Density defect = ABC + Density(Expr() - Density::from_scalar(rhs).body);
    if (!is_total_divergence(defect, t.model.table).is_divergence) return false;
    ++checked;
  }
  return checked >= N;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PSMBV_CLI_PATH) + " " + args + " 2>&1";
  std::FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  // 1. Jacobi on the bundled fixtures, checked against an independent
  //    brute-force expansion of the Jacobiator.
  {
    bool pass = true;
    for (const auto& a : poisson_fixtures()) {
      pass = pass && a.jacobi_check().holds && brute_force_jacobi(a);
    }
    PoissonTensor bad = fixture_non_poisson();
    pass = pass && !bad.jacobi_check().holds && !brute_force_jacobi(bad);
    criterion(1, "jacobi identity on fixtures and negative control", pass);
  }

  // 2. Noether identities: adjoint route and form-language route both
  //    normalize to zero and agree.
  {
    bool pass = true;
    for (const auto& a : poisson_fixtures()) {
      PSMModel m(a);
      pass = pass && m.noether_identity_check().all_pass();
    }
    criterion(2, "noether identities by both routes", pass);
  }

  // 3. Koszul-Tate: d_KT squares to zero on all generators and the
  //    ghost-degree -1 cocycles are closed.
  {
    bool pass = true;
    for (const auto& a : poisson_fixtures()) {
      PSMModel m(a);
      pass = pass && m.kt_check().all_pass();
    }
    criterion(3, "koszul-tate differential is nilpotent with closed cocycles", pass);
  }

  // 4. Master equation: (S,S) is a total divergence for the full action on
  //    all fixtures; dropping S2 breaks it for the quadratic fixture, with a
  //    nonzero witness.
  {
    bool pass = true;
    for (const auto& a : poisson_fixtures()) {
      PSMModel m(a);
      pass = pass && m.master_check(7).all_pass();
    }
    PSMModel quad(fixture_quadratic());
    auto obstructed = quad.master_check(3);
    bool failed_with_witness = false;
    for (const auto& c : obstructed.checks)
      if (!c.pass && !c.witness.empty()) failed_with_witness = true;
    pass = pass && failed_with_witness;
    criterion(4, "master equation holds for the full action and fails without S2", pass);
  }

  // 5. Total-differential reproduction: the generator images of the full
  //    action match the expected six families term by term, with the stage
  //    origins and kt/ce classification verified (X+ origins 0,1,1,0,2,1).
  {
    bool pass = true;
    std::string origins;
    for (const auto& a : poisson_fixtures()) {
      PSMModel m(a);
      auto r = m.total_differential_report();
      pass = pass && r.all_pass();
      for (const auto& c : r.checks)
        if (c.name == "term-origins[X+]") origins = c.note;
    }
    pass = pass && origins == "S-origins: 0,1,1,0,2,1";
    criterion(5, "total differential matches term by term with origin tags", pass, origins);
  }

  // 6. Nilpotency: (S, .) squares to zero exactly on every generator for the
  //    full action; without S2 it does not for the quadratic fixture.
  {
    bool pass = true;
    for (const auto& a : poisson_fixtures()) {
      PSMModel m(a);
      pass = pass && m.differential_check(7).all_pass();
    }
    PSMModel quad(fixture_quadratic());
    pass = pass && !quad.differential_check(3).all_pass();
    criterion(6, "induced differential is nilpotent exactly when S2 is included", pass);
  }

  // 7. Engine laws on randomized inputs (>= 520 cases per law).
  criterion(7, "randomized algebra, jet-calculus and antibracket laws", engine_laws());

  // 8. CLI golden reports byte-for-byte, with the exit-code contract.
  {
    const std::string golden = std::string(PSMBV_SOURCE_DIR) + "/tests/golden/";
    const std::string models = std::string(PSMBV_SOURCE_DIR) + "/models/";
    bool pass = true;
    const std::array<std::pair<const char*, int>, 4> cases = {
        {{"F1", 0}, {"F2", 0}, {"F3", 0}, {"F4", 1}}};
    for (const auto& [name, code] : cases) {
      auto text = run_cli("all " + models + name + ".model");
      auto json = run_cli("all " + models + name + ".model --format structured");
      pass = pass && text.exit_code == code && json.exit_code == code &&
             text.output == read_file(golden + name + ".all.txt") &&
             json.output == read_file(golden + name + ".all.json");
    }
    pass = pass && run_cli("master " + models + "F3.model --stage S0+S1").exit_code == 1;
    pass = pass && run_cli("check-jacobi /nonexistent.model").exit_code == 2;
    criterion(8, "cli golden reports and exit-code contract", pass);
  }

  return failures == 0 ? 0 : 1;
}
