#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gqft/algebra.hpp"
#include "gqft/fields.hpp"
#include "gqft/invariance.hpp"
#include "gqft/scattering.hpp"
#include "gqft/spin.hpp"

using namespace gqft;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Species make(const std::string& name, double m, int two_s = 0, Statistics st = Statistics::Bose) {
  Species s;
  s.name = name;
  s.mass = m;
  s.spin = SpinLabel{two_s};
  s.statistics = st;
  return s;
}

Species partner_of(const Species& s) {
  Species p = s;
  p.name = s.name + "~";
  p.mass = -s.mass;
  p.internal_energy = 0.0;
  p.antiparticle_of = s.name;
  p.xi = 1.0;
  p.eta = 0.0;
  return p;
}

Rotation random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return Rotation(Eigen::Quaterniond(n(rng), n(rng), n(rng), n(rng)).normalized());
}

GalileiElement random_element(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GalileiElement g;
  g.b = u(rng);
  g.a = Vec3(u(rng), u(rng), u(rng));
  g.v = Vec3(u(rng), u(rng), u(rng));
  g.R = random_rotation(rng);
  return g;
}

Eigen::Matrix<double, 5, 1> column(const SpaceTimePoint& p) {
  Eigen::Matrix<double, 5, 1> c;
  c << p.x, p.t, 1.0;
  return c;
}

Outcome group_laws() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  const GalileiElement e = identity();
  for (int i = 0; i < 1000; ++i) {
    const auto g1 = random_element(rng), g2 = random_element(rng), g3 = random_element(rng);
    const SpaceTimePoint p{Vec3(u(rng), u(rng), u(rng)), u(rng)};
    worst = std::max({worst, distance(compose(compose(g3, g2), g1), compose(g3, compose(g2, g1))),
                      distance(compose(e, g1), g1), distance(compose(g1, inverse(g1)), e),
                      distance(compose(inverse(g1), g1), e)});
    const SpaceTimePoint a = act(compose(g2, g1), p), b = act(g2, act(g1, p));
    worst = std::max({worst, (a.x - b.x).cwiseAbs().maxCoeff(), std::abs(a.t - b.t)});
    worst = std::max(worst, (homogeneous_matrix(compose(g2, g1)) - homogeneous_matrix(g2) * homogeneous_matrix(g1))
                                .cwiseAbs()
                                .maxCoeff());
    worst = std::max(worst, (homogeneous_matrix(g1) * column(p) - column(act(g1, p))).cwiseAbs().maxCoeff());
  }
  const double t = seconds_since(t0);
  return {worst < 1e-12 && t < 1.0, "residual " + sci(worst) + " < 1e-12, 1000 trials in " + sci(t) + " s (< 1 s)"};
}

AlgebraConfig algebra(int two_s, int n_levels = 12) {
  AlgebraConfig a;
  a.m = 1.0;
  a.W = 0.3;
  a.s = SpinLabel{two_s};
  a.n_levels = n_levels;
  return a;
}

Outcome lie_algebra() {
  const BracketReport rep = check_brackets(build_generators(algebra(1)), 1e-9);
  std::vector<double> probes;
  for (int n = 8; n <= 16; n += 2) probes.push_back(check_brackets(build_generators(algebra(1, n)), 1e-9).max_probe());
  bool monotone = true;
  std::string ladder;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (i > 0) monotone = monotone && probes[i] < probes[i - 1];
    ladder += (i ? ", " : "") + sci(probes[i]);
  }
  return {rep.max_interior() < 1e-9 && rep.by_family().size() == 10 && monotone,
          "interior residual " + sci(rep.max_interior()) + " < 1e-9 over " + std::to_string(rep.by_family().size()) +
              " families; probe residual n = 8..16: " + ladder};
}

Outcome casimirs_check() {
  double q2 = 0.0, q3 = 0.0, central = 0.0;
  for (int two_s : {0, 1, 2}) {
    const GeneratorSet g = build_generators(algebra(two_s));
    const Casimirs c = casimirs(g);
    const SparseOp id = sparse_identity(g.dim());
    const double s = 0.5 * two_s;
    q2 = std::max(q2, max_abs(SparseOp(c.Q2 - id * cplx(2 * g.cfg.m * g.cfg.W))));
    q3 = std::max(q3, interior_residual(g, SparseOp(c.Q3 - id * cplx(g.cfg.m * g.cfg.m * s * (s + 1)))));
    central = std::max(central, check_centrality(g, 1e-9).max_interior());
  }
  return {q2 < 1e-13 && q3 < 1e-9 && central < 1e-9,
          "Q2 - 2mW " + sci(q2) + " (exact: < 1e-13), Q3 " + sci(q3) + " < 1e-9, centrality " + sci(central) +
              " < 1e-9"};
}

Outcome spin_reps() {
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int two_s = 0; two_s <= 8; ++two_s) {
    const SpinLabel s{two_s};
    const CMatrix id = CMatrix::Identity(s.dim(), s.dim());
    const CMatrix c = conjugation_matrix(s);
    const double sign = two_s % 2 ? -1.0 : 1.0;
    worst = std::max({worst, max_abs(CMatrix(c.conjugate() * c - sign * id)), max_abs(CMatrix(c.adjoint() * c - id))});
    for (int i = 0; i < 50; ++i) {
      const Rotation r1 = random_rotation(rng), r2 = random_rotation(rng);
      const CMatrix d1 = wigner_d(s, r1).m, d2 = wigner_d(s, r2).m;
      worst = std::max({worst, max_abs(CMatrix(wigner_d(s, r1 * r2).m - d1 * d2)),
                        max_abs(CMatrix(d1.adjoint() * d1 - id)),
                        max_abs(CMatrix(d1.conjugate() - c * d1 * c.inverse()))});
    }
  }
  return {worst < 1e-12, "residual " + sci(worst) + " < 1e-12 for s = 0 .. 4"};
}

using Tuple = std::vector<std::size_t>;

FockVector product_state(const ModeLattice& lat, const Tuple& t) {
  FockVector v = vacuum(lat);
  for (auto it = t.rbegin(); it != t.rend(); ++it) v = create(lat, *it, v);
  return v;
}

Outcome fock_algebra() {
  std::vector<FockSpace> spaces;
  spaces.emplace_back(ModeLattice(2 * kPi, 1, {make("b", 1.0, 3)}, 3));
  spaces.emplace_back(ModeLattice(2 * kPi, 1, {make("f", 1.0, 3, Statistics::Fermi)}, 3));
  spaces.emplace_back(ModeLattice(2 * kPi, 1, {make("b", 1.0, 1), make("f", 1.0, 1, Statistics::Fermi)}, 3));
  double comm = 0.0, norm = 0.0, sime = 0.0, adj = 0.0;
  for (const auto& space : spaces) {
    const ModeLattice& lat = space.lattice();
    comm = std::max(comm, mode_commutator_check(space, 1e-12).max());
    std::vector<Tuple> tuples{{}};
    for (std::size_t n = 0, layer_start = 0; n < 3; ++n) {
      const std::size_t end = tuples.size();
      for (std::size_t i = layer_start; i < end; ++i)
        for (std::size_t q = 0; q < lat.mode_count(); ++q) {
          Tuple t = tuples[i];
          t.push_back(q);
          tuples.push_back(t);
        }
      layer_start = end;
    }
    for (const auto& a : tuples)
      for (const auto& b : tuples) {
        double expected = 0.0;
        if (a.size() == b.size()) {
          std::vector<std::size_t> p(a.size());
          std::iota(p.begin(), p.end(), 0);
          do {
            bool match = true;
            for (std::size_t i = 0; i < a.size(); ++i) match = match && a[i] == b[p[i]];
            if (!match) continue;
            int inv = 0;
            for (std::size_t i = 0; i < a.size(); ++i)
              for (std::size_t j = i + 1; j < a.size(); ++j)
                inv += lat.is_fermion_mode(a[i]) && lat.is_fermion_mode(a[j]) && p[i] > p[j];
            expected += inv % 2 ? -1.0 : 1.0;
          } while (std::next_permutation(p.begin(), p.end()));
        }
        norm = std::max(norm, std::abs(inner(product_state(lat, b), product_state(lat, a)) - expected));
      }
    for (std::size_t q1 = 0; q1 < lat.mode_count(); ++q1) {
      adj = std::max(adj, max_abs(SparseOp(space.creation(q1) - SparseOp(space.annihilation(q1).adjoint()))));
      for (std::size_t q2 = 0; q2 < lat.mode_count(); ++q2) {
        const double sign = lat.is_fermion_mode(q1) && lat.is_fermion_mode(q2) ? -1.0 : 1.0;
        const FockVector lhs = product_state(lat, {q1, q2});
        const FockVector rhs = cplx(sign) * product_state(lat, {q2, q1});
        sime = std::max(sime, (space.to_dense(lhs) - space.to_dense(rhs)).cwiseAbs().maxCoeff());
      }
    }
  }
  const double worst = std::max({comm, norm, sime, adj});
  return {worst < 1e-12, "(anti)commutators " + sci(comm) + ", orthonormality " + sci(norm) + ", exchange " +
                             sci(sime) + ", adjointness " + sci(adj) + " < 1e-12 on 4 modes, N <= 3"};
}

Outcome irreducibility() {
  const FockSpace space(ModeLattice(2 * kPi, 1, {make("a", 1.0)}, 2));
  const SpanReport r = monomial_span(space, 2);
  return {space.dim() == 3 && r.rank == 9 && r.target == 9,
          "dimension " + std::to_string(space.dim()) + ", rank " + std::to_string(r.rank) + " of " +
              std::to_string(r.target) + " from " + std::to_string(r.monomials) + " monomials"};
}

Outcome field_laws() {
  double worst = 0.0;
  std::size_t checks = 0;
  for (int two_s : {0, 1}) {
    Species a = make("a", 1.0, two_s, two_s ? Statistics::Fermi : Statistics::Bose);
    a.xi = 1.2;
    a.eta = 0.7;
    const FockSpace space(ModeLattice(2 * kPi, 3, {a, partner_of(a)}, 2));
    const ModeLattice& lat = space.lattice();
    for (const auto& s : sample_elements(lat, 20240611, 20, true)) {
      const auto gc = make_grid_compatible(compose_word(s.word), lat);
      const SparseOp u = galilei_unitary(gc, space);
      for (auto v : {FieldVariant::Annihilation, FieldVariant::Creation, FieldVariant::AntiparticleCreation,
                     FieldVariant::General})
        for (int l = 0; l <= two_s; ++l) {
          const FieldSpec f{0, a.spin.two_lambda(l), v, {{1, 0, -1}, 0.0}};
          worst = std::max(worst, verify_field_transformation(gc, u, space, f, 1e-10).max());
          ++checks;
        }
    }
  }
  return {worst < 1e-10, "residual " + sci(worst) + " < 1e-10 over " + std::to_string(checks) +
                             " (element, field, lambda) cases, s = 0, 1/2"};
}

Outcome commutator_structure() {
  const std::vector<std::pair<cplx, cplx>> grid{{1.0, 0.0}, {1.0, 0.5}, {0.6, cplx(0, 0.8)},
                                                {1.0, 1.0}, {0.5, -0.5}, {0.0, 1.0}};
  const std::vector<IntVec3> pts{{0, 0, 0}, {1, 0, -1}};
  double worst = 0.0;
  std::size_t cases = 0;
  for (int two_s : {0, 1})
    for (auto st : {Statistics::Bose, Statistics::Fermi})
      for (const auto& [xi, eta] : grid) {
        Species a = make("a", 1.0, two_s, st);
        a.xi = xi;
        a.eta = eta;
        const FockSpace space(ModeLattice(2 * kPi, 3, {a, partner_of(a)}, 2));
        for (const auto& x : pts)
          for (const auto& y : pts)
            for (int l1 = 0; l1 <= two_s; ++l1)
              for (int l2 = 0; l2 <= two_s; ++l2) {
                const FieldSpec f{0, a.spin.two_lambda(l1), FieldVariant::General, {x, 0.0}};
                const FieldSpec g{0, a.spin.two_lambda(l2), FieldVariant::General, {y, 0.0}};
                worst = std::max(worst, equal_time_commutator(space, f, g, 0, 1e-11).max());
                ++cases;
              }
      }
  return {worst < 1e-11, "residual " + sci(worst) + " < 1e-11 over " + std::to_string(cases) +
                             " cases, 6 (xi, eta) pairs incl. |xi| = |eta|, both statistics at s = 0, 1/2"};
}

Outcome invariance_theorems() {
  bool ok = true;
  double pos = 0.0, neg = std::numeric_limits<double>::infinity(), num = 0.0;
  for (const Species& s : {make("phi", 1.0), make("chi", 1.0, 1, Statistics::Fermi)}) {
    const FockSpace space(ModeLattice(2 * kPi, 3, {s}, 2));
    const auto samples = sample_elements(space.lattice(), 20240611, 20);
    const auto reps = check_pairwise_theorem(space, samples, 1e-9, 1e-2);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      ok = ok && reps[i].verdict == (i < 2 ? Verdict::Invariant : Verdict::NonInvariant);
      if (i < 2) pos = std::max(pos, reps[i].max_residual);
      else neg = std::min(neg, reps[i].max_residual / reps[i].op_norm);
    }
    num = std::max(num, number_commutator(realize(density_polynomial(space.lattice(), 0), space), space).norm);
    num = std::max(num, number_commutator(realize(two_body_polynomial(space.lattice(), 0, 0.5, 1.0), space), space).norm);
  }
  auto production = [](double mv, double L, int n) {
    return FockSpace(ModeLattice(L, n, {make("theta", 1.0), make("N", 1.0), make("V", mv)}, 2));
  };
  const FockSpace good = production(2.0, 2 * kPi, 3), bad = production(2.5, 2 * kPi, 3);
  const auto g = check_mass_sum_rule(good, sample_elements(good.lattice(), 20240611, 20), "V", "N", "theta");
  const auto b = check_mass_sum_rule(bad, sample_elements(bad.lattice(), 20240611, 20), "V", "N", "theta");
  ok = ok && g.verdict == Verdict::Invariant && b.verdict == Verdict::NonInvariant;
  pos = std::max(pos, g.max_residual);
  neg = std::min(neg, b.max_residual / b.op_norm);
  const FockSpace small = production(2.0, 1.0, 1);
  const double viol = number_commutator(realize(production_polynomial(small.lattice(), 2, 1, 0, 1.0), small), small).norm;
  ok = ok && pos < 1e-9 && neg > 1e-2 && num < 1e-12 && viol > 0.5;
  return {ok, "positive " + sci(pos) + " < 1e-9, negative " + sci(neg) + " ||O|| > 1e-2 ||O||, no inconclusive; [O,N] " +
                  sci(num) + ", production ||[O,N]|| " + sci(viol) + " > 0.5"};
}

Outcome non_hermiticity() {
  const FockSpace space(ModeLattice(2 * kPi, 3, {make("a", 1.0)}, 2));
  GalileiElement boost;
  boost.v = Vec3(minimal_boost_speed(space.lattice()), 0.0, 0.0);
  const HermiticityReport rep = hermiticity_obstruction(space, 0, boost, 1e-2, 1e-12);
  bool exceeds = true;
  for (const auto& p : rep.points) exceeds = exceeds && p.residual >= p.bound - 1e-12;
  return {rep.passed && exceeds && rep.max_test_mode_residual < 1e-12,
          "min residual at m gamma != 0 " + sci(rep.min_nonzero_gamma_residual) + " >= bound at all " +
              std::to_string(rep.points.size()) + " points; zeroed phase " + sci(rep.max_test_mode_residual) +
              " < 1e-12"};
}

double off_block(const SparseOp& o, const FockSpace& space) { return superselection_report(o, space).max_off_block; }

struct Scattering {
  ModelSpec spec;
  Model model;
  SMatrixResult result;
  double seconds = 0.0;
};

Scattering& gali_lee() {
  static Scattering s = [] {
    const auto t0 = std::chrono::steady_clock::now();
    ModelSpec spec = gali_lee_model(0.1);
    Model model = build_model(spec);
    SMatrixResult result = s_matrix(model, spec);
    return Scattering{std::move(spec), std::move(model), std::move(result), seconds_since(t0)};
  }();
  return s;
}

Outcome superselection() {
  const Scattering& gl = gali_lee();
  double worst = std::max(off_block(gl.model.H, gl.model.space), off_block(gl.result.S, gl.model.space));
  for (const auto& s : sample_elements(gl.model.space.lattice(), 20240611, 20))
    worst = std::max(worst, off_block(sample_unitary(s, gl.model.space), gl.model.space));
  return {worst < 1e-12, "off-block " + sci(worst) + " < 1e-12 for H, S and 51 unitaries on the 3-species space"};
}

Outcome scattering() {
  ModelSpec free_spec = gali_lee_model(0.0);
  const Model free_model = build_model(free_spec);
  const double free_dev = max_abs(SparseOp(s_matrix(free_model, free_spec).S - sparse_identity(free_model.space.dim())));
  const Scattering& gl = gali_lee();
  const double mass = mass_commutator(gl.result.S, gl.model.space).norm;
  const double num = superselection_report(gl.result.S, gl.model.space).number_commutator;
  std::string ladder;
  for (const auto& st : gl.result.stages) ladder += (ladder.empty() ? "" : ", ") + sci(st.unitarity_defect);
  const bool static_ok = free_dev == 0.0 && gl.result.unitarity_defect < 5e-3 && mass < 1e-12 && num > 0.0 &&
                         gl.seconds < 60.0;
  return {static_ok && gl.result.defect_monotone,
          "|S(V=0) - I| " + sci(free_dev) + ", |S^dag S - I| " +
              sci(gl.result.unitarity_defect) + " < 5e-3, [S,M] " + sci(mass) + ", ||[S,N]|| " + sci(num) +
              " > 0, " + sci(gl.seconds) + " s; defect along eps = 0.5, 0.25, 0.125: " + ladder +
              (gl.result.defect_monotone ? " (decreasing)" : " (not decreasing: the finite box has a discrete spectrum, see README)")};
}

Outcome equation_of_motion() {
  Species a = make("a", 1.0);
  const FockSpace space(ModeLattice(2 * kPi, 3, {a}, 2));
  const SparseOp h = free_hamiltonian(space) + realize(two_body_polynomial(space.lattice(), 0, 0.5, 1.0), space);
  const EomReport rep =
      equation_of_motion_check(space, {0, 0, FieldVariant::Annihilation, {{1, 0, -1}, 0.0}}, h, 0.3, 0.1, 1e-12);
  return {!rep.exact && rep.ratio >= 3.2 && rep.ratio <= 4.8,
          "ratio " + sci(rep.ratio) + " in [3.2, 4.8] (residuals " + sci(rep.residual_dt) + ", " +
              sci(rep.residual_half) + ")"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> expect_red;
  app.add_option("--expect-red", expect_red, "Criteria known to be red; exit 0 iff exactly these fail");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"group laws", group_laws},
      {"lie algebra brackets", lie_algebra},
      {"casimir invariants", casimirs_check},
      {"spin representations", spin_reps},
      {"fock algebra", fock_algebra},
      {"irreducibility probe", irreducibility},
      {"field transformation law", field_laws},
      {"commutator structure", commutator_structure},
      {"invariance theorems", invariance_theorems},
      {"non-hermiticity", non_hermiticity},
      {"superselection", superselection},
      {"scattering", scattering},
      {"equation of motion", equation_of_motion},
  };

  std::set<int> red;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) red.insert(id);
    std::printf("%-4s %2d %-26s %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - red.size(), criteria.size());
  const std::set<int> expected(expect_red.begin(), expect_red.end());
  if (!expected.empty()) {
    std::printf("expected red: %s\n", red == expected ? "matches" : "DOES NOT MATCH");
    return red == expected ? 0 : 1;
  }
  return red.empty() ? 0 : 1;
}
