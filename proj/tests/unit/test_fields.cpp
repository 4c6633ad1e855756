#include <doctest.h>

#include "gqft/error.hpp"
#include "gqft/fields.hpp"

using namespace gqft;

namespace {

Species make(const std::string& name, double m, int two_s = 0, Statistics st = Statistics::Bose) {
  Species s;
  s.name = name;
  s.mass = m;
  s.spin = SpinLabel{two_s};
  s.statistics = st;
  return s;
}

FockSpace single(int two_s = 0, Statistics st = Statistics::Bose, int n_max = 2) {
  return FockSpace(ModeLattice(2 * kPi, 3, {make("a", 1.0, two_s, st)}, n_max));
}

GalileiElement boost_x(double v) {
  GalileiElement g;
  g.v = Vec3(v, 0.0, 0.0);
  return g;
}

}  // namespace

TEST_CASE("field annihilates the vacuum and creates position states") {
  const auto space = single();
  const GridPoint x{{1, 0, -1}, 0.3};
  const SparseOp psi = annihilation_field(space, 0, 0, x);
  const CVector vac = space.to_dense(vacuum(space.lattice()));
  CHECK((psi * vac).norm() < 1e-15);
  const CVector pos = SparseOp(psi.adjoint()) * vac;
  CHECK(pos.squaredNorm() == doctest::Approx(space.lattice().delta_weight()));
}

TEST_CASE("single-mode lattice gives a unit-modulus phase") {
  FockSpace space(ModeLattice(2 * kPi, 1, {make("a", 1.0)}, 2));
  const SparseOp psi = annihilation_field(space, 0, 0, {{0, 0, 0}, 0.7});
  const SparseOp a = space.annihilation(0);
  const cplx ratio = CMatrix(psi)(0, 1) / CMatrix(a)(0, 1) * std::pow(2 * kPi, 1.5);
  CHECK(std::abs(ratio) == doctest::Approx(1.0));
}

TEST_CASE("equal-time commutators") {
  for (auto st : {Statistics::Bose, Statistics::Fermi}) {
    const auto space = single(1, st);
    const GridPoint x{{0, 1, 0}, 0.0};
    const GridPoint y{{1, 1, -1}, 0.0};
    FieldSpec f{0, -1, FieldVariant::Annihilation, x};
    CHECK(equal_time_commutator(space, f, f, 0, 1e-12).passed);
    FieldSpec g = f;
    g.x = y;
    CHECK(equal_time_commutator(space, f, g, 0, 1e-12).passed);
    g = f;
    g.two_lambda = 1;
    CHECK(equal_time_commutator(space, f, g, 0, 1e-12).passed);
    CHECK(equal_time_commutator(space, f, g, 0, 1e-12, false).passed);
  }
}

TEST_CASE("general field with an antiparticle") {
  Species a = make("a", 1.0);
  a.xi = 1.0;
  a.eta = 1.0;
  Species abar = make("abar", -1.0);
  abar.antiparticle_of = "a";
  FockSpace space(ModeLattice(2 * kPi, 3, {a, abar}, 2));
  const GridPoint x{{0, 0, 1}, 0.0};
  const FieldSpec f{0, 0, FieldVariant::General, x};
  const auto rep = equal_time_commutator(space, f, f, 1, 1e-12);
  CHECK(rep.passed);
  CHECK(equal_time_commutator(space, f, f, 1, 1e-12, false).passed);

  // pure antiparticle creation on the vacuum
  const SparseOp c = realize_field(space, {0, 0, FieldVariant::AntiparticleCreation, x});
  const CVector vac = space.to_dense(vacuum(space.lattice()));
  CHECK((c * vac).norm() == doctest::Approx(std::pow(3.0 / (2 * kPi), 1.5)));

  Species lone = make("b", 1.0);
  lone.eta = 0.5;
  FockSpace bad(ModeLattice(2 * kPi, 3, {lone}, 2));
  CHECK_THROWS_AS(general_field(bad, 0, 0, x), Error);
  Species wrong = make("bbar", -2.0);
  wrong.antiparticle_of = "b";
  FockSpace bad2(ModeLattice(2 * kPi, 3, {lone, wrong}, 2));
  try {
    general_field(bad2, 0, 0, x);
    FAIL("expected PartnerMassMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PartnerMassMismatch);
  }
}

TEST_CASE("eta = 0 reduces to xi psi^-") {
  Species a = make("a", 1.0);
  a.xi = cplx(0.5, 0.25);
  FockSpace space(ModeLattice(2 * kPi, 3, {a}, 2));
  const GridPoint x{{1, 0, 0}, 0.2};
  CHECK(max_abs(SparseOp(general_field(space, 0, 0, x) - annihilation_field(space, 0, 0, x) * a.xi)) < 1e-15);
}

TEST_CASE("galilei unitary basics") {
  const auto space = single(1);
  const auto& lat = space.lattice();
  const SparseOp id = galilei_unitary(make_grid_compatible(identity(), lat), space);
  CHECK(max_abs(SparseOp(id - sparse_identity(space.dim()))) < 1e-15);

  GalileiElement shift;
  shift.a = Vec3(lat.grid_spacing(), 0.0, 0.0);
  const SparseOp u = galilei_unitary(make_grid_compatible(shift, lat), space);
  const std::size_t q = lat.mode_index({0, {1, 0, -1}, 1});
  const auto one = space.to_dense(create(lat, q, vacuum(lat)));
  const CVector out = u * one;
  const cplx expect = std::exp(kI * lat.momentum({1, 0, -1}).dot(shift.a));
  CHECK(std::abs(one.dot(out) - expect) < 1e-14);

  for (const auto& r : octahedral_rotations()) {
    GalileiElement g;
    g.R = r;
    g.v = Vec3(1.0, 0.0, -1.0);
    g.b = 0.37;
    const SparseOp ug = galilei_unitary(make_grid_compatible(g, lat), space);
    CHECK(max_abs(SparseOp(SparseOp(ug.adjoint()) * ug - sparse_identity(space.dim()))) < 1e-11);
  }

  GalileiElement bad;
  bad.R = Rotation::axis_angle(Vec3::UnitZ(), 0.3);
  CHECK_THROWS_AS(make_grid_compatible(bad, lat), Error);
  bad = boost_x(0.5);
  CHECK_THROWS_AS(make_grid_compatible(bad, lat), Error);
}

TEST_CASE("projective composition") {
  const auto space = single(1, Statistics::Bose, 2);
  const auto& lat = space.lattice();
  GalileiElement g1;
  g1.a = Vec3(lat.grid_spacing(), 0.0, 0.0);
  g1.b = 0.0;
  g1.R = Rotation::axis_angle(Vec3::UnitZ(), kPi / 2);
  GalileiElement g2 = boost_x(1.0);
  g2.a = Vec3(lat.grid_spacing(), 0.0, 0.0);
  g2.b = 0.4;
  const auto rep = projective_composition_check(g2, g1, space, 1e-12);
  CHECK(rep.passed);
  // the wrong sign of zeta is detected
  const SparseOp lhs = galilei_unitary(make_grid_compatible(g2, lat), space) *
                       galilei_unitary(make_grid_compatible(g1, lat), space);
  const SparseOp rhs = galilei_unitary(make_grid_compatible(compose(g2, g1), lat), space);
  const double zeta = projective_phase(g2, g1, 1.0);
  CHECK(std::abs(zeta) > 0.1);
  const std::size_t q = lat.mode_index({0, {0, 0, 0}, 1});
  const CVector one = space.to_dense(create(lat, q, vacuum(lat)));
  const CVector a = lhs * one;
  const CVector b = rhs * one;
  CHECK((a - std::exp(kI * zeta) * b).norm() < 1e-12);
  CHECK((a - std::exp(-kI * zeta) * b).norm() > 0.1);
}

TEST_CASE("field transformation laws") {
  for (int two_s : {0, 1, 2}) {
    Species a = make("a", 1.0, two_s);
    a.eta = 0.7;
    a.xi = 1.2;
    Species abar = make("abar", -1.0, two_s);
    abar.antiparticle_of = "a";
    FockSpace space(ModeLattice(2 * kPi, 3, {a, abar}, 2));
    const auto& lat = space.lattice();
    std::vector<GalileiElement> gs;
    gs.push_back(identity());
    GalileiElement g = boost_x(1.0);
    gs.push_back(g);
    g.R = Rotation::axis_angle(Vec3::UnitZ(), kPi / 2);
    gs.push_back(g);
    g.a = Vec3(0.0, lat.grid_spacing(), -lat.grid_spacing());
    g.b = 0.3;
    gs.push_back(g);
    GalileiElement rot;
    rot.R = Rotation::axis_angle(Vec3(1, 1, 1), 2 * kPi / 3);
    gs.push_back(rot);
    for (const auto& ge : gs) {
      const auto gc = make_grid_compatible(ge, lat);
      for (auto variant : {FieldVariant::Annihilation, FieldVariant::Creation, FieldVariant::AntiparticleCreation,
                           FieldVariant::General})
        for (int i = 0; i <= two_s; ++i) {
          const FieldSpec f{0, -two_s + 2 * i, variant, {{1, 0, -1}, 0.0}};
          CHECK(verify_field_transformation(gc, space, f, 1e-10).passed);
          CHECK(verify_field_transformation(gc, space, f, 1e-10, DInverseForm::Adjoint).passed);
        }
    }
  }
}

TEST_CASE("time-dependent fields transform exactly without boosts") {
  const auto space = single(1);
  GalileiElement g;
  g.b = 0.6;
  g.R = Rotation::axis_angle(Vec3::UnitX(), kPi);
  const FieldSpec f{0, 1, FieldVariant::Annihilation, {{0, 1, 1}, 0.45}};
  CHECK(verify_field_transformation(make_grid_compatible(g, space.lattice()), space, f, 1e-10).passed);
  const auto boosted = make_grid_compatible(boost_x(1.0), space.lattice());
  CHECK_THROWS_AS(verify_field_transformation(boosted, space, f, 1e-10), Error);
}

TEST_CASE("hermitian combination cannot transform locally") {
  const auto space = single();
  const auto rep = hermiticity_obstruction(space, 0, boost_x(1.0), 1e-2, 1e-12);
  CHECK(rep.passed);
  CHECK(rep.max_test_mode_residual < 1e-12);
  CHECK(rep.max_zero_gamma_residual < 1e-12);
  for (const auto& p : rep.points) CHECK(p.residual >= p.bound - 1e-12);
}

TEST_CASE("equation of motion") {
  FockSpace space(ModeLattice(2 * kPi, 1, {make("a", 1.0, 1)}, 2));
  const FieldSpec f{0, 1, FieldVariant::Annihilation, {{0, 0, 0}, 0.0}};
  Species a = make("a", 1.0, 1);
  a.internal_energy = 0.8;
  FockSpace spaceW(ModeLattice(2 * kPi, 1, {a}, 2));
  const auto rep = equation_of_motion_check(spaceW, f, free_hamiltonian(spaceW), 0.3, 0.1, 1e-12);
  CHECK(rep.passed);
  CHECK(rep.ratio == doctest::Approx(4.0).epsilon(0.2));
  const auto zero = equation_of_motion_check(space, f, SparseOp(space.dim(), space.dim()), 0.0, 0.1, 1e-12);
  CHECK(zero.exact);
  CHECK(zero.passed);
}
