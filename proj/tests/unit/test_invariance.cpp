#include <doctest.h>

#include "gqft/error.hpp"
#include "gqft/invariance.hpp"

using namespace gqft;

namespace {

Species make(const std::string& name, double m, int two_s = 0) {
  Species s;
  s.name = name;
  s.mass = m;
  s.spin = SpinLabel{two_s};
  return s;
}

}  // namespace

TEST_CASE("realize basics") {
  FockSpace space(ModeLattice(2 * kPi, 3, {make("a", 1.0)}, 2));
  const auto& lat = space.lattice();
  CHECK(realize(OperatorPolynomial{}, space).nonZeros() == 0);

  // sum_x psi^+ psi = (n/L)^3 ... summed density equals N times L^-3 * n^3 * (L/n)^0
  const SparseOp rho = realize(density_polynomial(lat, 0), space);
  const double w = std::pow(3.0, 3) / std::pow(2 * kPi, 3);
  CHECK(max_abs(SparseOp(rho - space.number_operator() * w)) < 1e-12);
  CHECK(number_commutator(rho, space).norm < 1e-12);

  // a single-mode number operator from a monomial in momentum-like combination
  OperatorPolynomial p = density_polynomial(lat, 0);
  p.monomials.resize(1);
  const SparseOp one = realize(p, space);
  CHECK(max_abs(SparseOp(one - SparseOp(one.adjoint()))) < 1e-12);
}

TEST_CASE("hermitian flag is validated") {
  ModeLattice lat(2 * kPi, 3, {make("a", 1.0)}, 2);
  OperatorPolynomial p = lone_creation_polynomial(lat, 0, 0);
  p.hermitian = true;
  CHECK_THROWS_AS(p.validate(lat), Error);
  const auto prod = production_polynomial(ModeLattice(2 * kPi, 3, {make("V", 2.0), make("N", 1.0), make("t", 1.0)}, 2),
                                          0, 1, 2, 0.3);
  CHECK(prod.hermitian);
}

TEST_CASE("conjugation preserves spectra and the number operator") {
  FockSpace space(ModeLattice(2 * kPi, 3, {make("a", 1.0)}, 2));
  const auto samples = sample_elements(space.lattice(), 3, 5);
  const SparseOp N = space.number_operator();
  const SparseOp O = realize(displaced_pair_polynomial(space.lattice(), 0, 0, {0, 1, 0}), space);
  const CMatrix herm = CMatrix(O) + CMatrix(O).adjoint();
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<CMatrix>(herm).eigenvalues();
  for (const auto& s : samples) {
    const SparseOp u = sample_unitary(s, space);
    CHECK(max_abs(SparseOp(conjugate(u, N) - N)) < 1e-12);
    const CMatrix c = CMatrix(conjugate(u, O));
    const Eigen::VectorXd ev2 = Eigen::SelfAdjointEigenSolver<CMatrix>(c + c.adjoint()).eigenvalues();
    CHECK((ev - ev2).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("sample set shape") {
  ModeLattice lat(2 * kPi, 3, {make("a", 1.0), make("b", 1.5)}, 2);
  CHECK(minimal_boost_speed(lat) == doctest::Approx(2.0));
  const auto full = sample_elements(lat, 1);
  CHECK(full.size() == 24 + 3 + 3 + 1 + 20);
  const auto kin = sample_elements(lat, 1, 20, true);
  CHECK(kin.size() == 24 + 3 + 3 + 20);
  for (const auto& s : kin) CHECK(s.kinematic);
}

TEST_CASE("pairwise theorem verdicts") {
  for (int two_s : {0, 1}) {
    FockSpace space(ModeLattice(2 * kPi, 3, {make("a", 1.0, two_s)}, 2));
    const auto reps = check_pairwise_theorem(space, sample_elements(space.lattice(), 5, 6));
    REQUIRE(reps.size() == 4);
    CHECK(reps[0].verdict == Verdict::Invariant);
    CHECK(reps[1].verdict == Verdict::Invariant);
    CHECK(reps[2].verdict == Verdict::NonInvariant);
    CHECK(reps[2].max_residual > 0.1 * reps[2].op_norm);
    CHECK(reps[3].verdict == Verdict::NonInvariant);
  }
}

TEST_CASE("mass sum rule") {
  FockSpace good(ModeLattice(2 * kPi, 3, {make("theta", 1.0), make("N", 1.0), make("V", 2.0)}, 2));
  const auto rg = check_mass_sum_rule(good, sample_elements(good.lattice(), 1, 4), "V", "N", "theta");
  CHECK(rg.verdict == Verdict::Invariant);
  FockSpace bad(ModeLattice(2 * kPi, 3, {make("theta", 1.0), make("N", 1.0), make("V", 1.5)}, 2));
  const auto samples = sample_elements(bad.lattice(), 1, 4);
  CHECK(check_mass_sum_rule(bad, samples, "V", "N", "theta").verdict == Verdict::NonInvariant);
  std::vector<GroupSample> no_boost;
  for (const auto& s : samples)
    if (!s.boost) no_boost.push_back(s);
  CHECK(check_mass_sum_rule(bad, no_boost, "V", "N", "theta").verdict == Verdict::Invariant);

  // one mode per species in a unit box
  FockSpace small(ModeLattice(1.0, 1, {make("theta", 1.0), make("N", 1.0), make("V", 2.0)}, 2));
  const SparseOp prod = realize(production_polynomial(small.lattice(), 2, 1, 0, 1.0), small);
  CHECK(number_commutator(prod, small).norm > 0.5);
  CHECK(mass_commutator(prod, small).norm < 1e-13);
  CHECK(number_commutator(free_hamiltonian(good), good).norm == 0.0);
}

TEST_CASE("coefficient covariance") {
  ModeLattice scalar(2 * kPi, 3, {make("a", 1.0)}, 2);
  const auto v = two_body_polynomial(scalar, 0, 1.0, 1.0);
  for (const auto& r : octahedral_rotations()) CHECK(coefficient_covariance_check(v, r, scalar, 1e-12).passed);

  ModeLattice spinor(2 * kPi, 3, {make("a", 1.0, 1)}, 2);
  const auto rho = density_polynomial(spinor, 0);
  for (const auto& r : octahedral_rotations()) CHECK(coefficient_covariance_check(rho, r, spinor, 1e-12).passed);

  OperatorPolynomial sz;
  for (int l : {-1, 1}) sz.monomials.push_back({{{0, l, {0, 0, 0}}}, {{0, l, {0, 0, 0}}}, 0.5 * l});
  const auto rx = Rotation::axis_angle(Vec3::UnitX(), kPi / 2);
  const auto rep = coefficient_covariance_check(sz, rx, spinor, 1e-12);
  CHECK_FALSE(rep.passed);
  CHECK(rep.max() > 0.1);
}

TEST_CASE("kinematic words compose to grid-compatible elements") {
  FockSpace space(ModeLattice(2 * kPi, 3, {make("a", 1.0)}, 2));
  const auto samples = sample_elements(space.lattice(), 11, 20, true);
  int words = 0;
  for (const auto& s : samples) {
    if (s.word.size() < 2) continue;
    ++words;
    const GridCompatibleElement g = make_grid_compatible(compose_word(s.word), space.lattice());
    for (auto variant : {FieldVariant::Annihilation, FieldVariant::Creation}) {
      const FieldSpec f{0, 0, variant, GridPoint{{1, 0, -1}, 0.0}};
      CHECK(verify_field_transformation(g, space, f, 1e-10).passed);
    }
  }
  CHECK(words == 20);
  GalileiElement t;
  t.b = 0.5;
  CHECK(compose_word({}).b == 0.0);
  CHECK(compose_word({t, t}).b == 1.0);
}
