#include <doctest.h>

#include <random>

#include "gqft/galilei.hpp"

using namespace gqft;

namespace {

GalileiElement random_element(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  return {n(rng), Vec3(n(rng), n(rng), n(rng)), Vec3(n(rng), n(rng), n(rng)), Rotation(q)};
}

}  // namespace

TEST_CASE("compose agrees with the 5x5 matrix product") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto g1 = random_element(rng);
    const auto g2 = random_element(rng);
    const HomogeneousMatrix prod = homogeneous_matrix(g2) * homogeneous_matrix(g1);
    CHECK((homogeneous_matrix(compose(g2, g1)) - prod).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("group axioms") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto g1 = random_element(rng);
    const auto g2 = random_element(rng);
    const auto g3 = random_element(rng);
    CHECK(distance(compose(g3, compose(g2, g1)), compose(compose(g3, g2), g1)) < 1e-12);
    CHECK(distance(compose(g1, inverse(g1)), identity()) < 1e-12);
    CHECK(distance(compose(inverse(g1), g1), identity()) < 1e-12);
    CHECK(distance(compose(identity(), g1), g1) < 1e-14);
  }
}

TEST_CASE("act is a left action") {
  std::mt19937_64 rng(3);
  const SpaceTimePoint p{Vec3(0.3, -1.2, 2.0), 0.7};
  for (int i = 0; i < 20; ++i) {
    const auto g1 = random_element(rng);
    const auto g2 = random_element(rng);
    const auto a = act(g2, act(g1, p));
    const auto b = act(compose(g2, g1), p);
    CHECK((a.x - b.x).norm() < 1e-12);
    CHECK(a.t == doctest::Approx(b.t));
  }
}

TEST_CASE("cocycle identity closes with the projective phase") {
  std::mt19937_64 rng(5);
  const SpaceTimePoint p{Vec3(1.0, 0.5, -0.25), 0.4};
  for (double m : {1.0, -2.0, 0.5}) {
    for (int i = 0; i < 50; ++i) {
      const auto g1 = random_element(rng);
      const auto g2 = random_element(rng);
      const double lhs = m * cocycle_gamma(compose(g2, g1), p);
      const double rhs = m * cocycle_gamma(g1, p) + m * cocycle_gamma(g2, act(g1, p)) + projective_phase(g2, g1, m);
      CHECK(std::abs(lhs - rhs) < 1e-11);
    }
  }
}

TEST_CASE("cocycle and phase special cases") {
  GalileiElement boost;
  boost.v = Vec3(1.0, 0.0, 0.0);
  CHECK(cocycle_gamma(boost, {Vec3(0.0, 1.0, 0.0), 0.0}) == doctest::Approx(0.0));
  CHECK(cocycle_gamma(boost, {Vec3(2.0, 0.0, 0.0), 1.0}) == doctest::Approx(2.5));
  GalileiElement shift;
  shift.a = Vec3(0.0, 0.0, 3.0);
  CHECK(cocycle_gamma(shift, {Vec3(1.0, 2.0, 3.0), 4.0}) == 0.0);
  GalileiElement b2;
  b2.v = Vec3(0.0, 0.0, 2.0);
  CHECK(projective_phase(b2, shift, 1.5) == doctest::Approx(-9.0));
  CHECK(projective_phase(shift, b2, 1.5) == doctest::Approx(0.0));
}

TEST_CASE("rotation double cover") {
  const Rotation r = Rotation::axis_angle(Vec3::UnitZ(), 2 * kPi);
  CHECK((r.matrix() - Mat3::Identity()).norm() < 1e-12);
  CHECK(r.quaternion().w() == doctest::Approx(-1.0));
  GalileiElement g;
  g.R = r;
  CHECK(distance(g, identity()) > 1.0);
  CHECK(distance(g, identity(), true) < 1e-12);
}
