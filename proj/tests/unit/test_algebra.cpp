#include <doctest.h>

#include "gqft/algebra.hpp"
#include "gqft/error.hpp"

using namespace gqft;

TEST_CASE("bracket table closes on the interior block") {
  for (int two_s : {0, 1}) {
    AlgebraConfig cfg;
    cfg.m = 1.3;
    cfg.W = 0.4;
    cfg.s = SpinLabel{two_s};
    cfg.n_levels = 8;
    const auto g = build_generators(cfg);
    const auto rep = check_brackets(g, 1e-10);
    CHECK(rep.passed);
    CHECK(rep.max_interior() < 1e-10);
    CHECK(rep.by_family().size() == 10);
  }
}

TEST_CASE("probe residual decays with truncation") {
  double prev = 1e300;
  for (int n : {8, 12, 16}) {
    AlgebraConfig cfg;
    cfg.n_levels = n;
    const auto rep = check_brackets(build_generators(cfg), 1e-10);
    CHECK(rep.max_probe() < prev);
    prev = rep.max_probe();
  }
}

TEST_CASE("Casimirs are central and Jacobi holds") {
  AlgebraConfig cfg;
  cfg.n_levels = 8;
  cfg.s = SpinLabel{1};
  const auto g = build_generators(cfg);
  CHECK(check_centrality(g, 1e-9).passed);
  CHECK(jacobi_residual(g, 30, 42) < 1e-9);
}

TEST_CASE("too small truncation is rejected") {
  AlgebraConfig cfg;
  cfg.n_levels = 1;
  CHECK_THROWS_AS(build_generators(cfg), Error);
}

TEST_CASE("Casimir values") {
  for (int two_s : {0, 1, 2}) {
    AlgebraConfig cfg;
    cfg.m = 1.3;
    cfg.W = 0.4;
    cfg.s = SpinLabel{two_s};
    const auto g = build_generators(cfg);
    const auto c = casimirs(g);
    SparseOp id(g.dim(), g.dim());
    id.setIdentity();
    const double s = 0.5 * two_s;
    CHECK(max_abs(SparseOp(c.Q1 - id * cplx(cfg.m))) < 1e-13);
    CHECK(max_abs(SparseOp(c.Q2 - id * cplx(2 * cfg.m * cfg.W))) < 1e-13);
    CHECK(interior_residual(g, SparseOp(c.Q3 - id * cplx(cfg.m * cfg.m * s * (s + 1)))) < 1e-9);
  }
}
