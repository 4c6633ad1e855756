#include <doctest.h>

#include <random>

#include "gqft/error.hpp"
#include "gqft/scattering.hpp"

using namespace gqft;

namespace {

// Independent Simpson loop over the nodes.
cplx simpson_loop(double eps, double omega, const QuadratureSpec& q) {
  const double T = q.horizon_factor / eps;
  auto n = static_cast<long long>(std::ceil(T / q.step));
  if (n % 2) ++n;
  const double h = T / static_cast<double>(n);
  cplx sum{};
  for (long long k = 0; k <= n; ++k) {
    const double c = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    sum += c * std::exp(cplx(-eps, omega) * (h * static_cast<double>(k)));
  }
  return h / 3.0 * sum;
}

ModelSpec small_model(double coupling) {
  ModelSpec s = gali_lee_model(coupling, 1, 2);
  return s;
}

ModelSpec free_model(int n) {
  ModelSpec s = gali_lee_model(0.1, n, 2);
  s.interaction.monomials.clear();
  return s;
}

double dist_identity(const SparseOp& a) {
  SparseOp id(a.rows(), a.cols());
  id.setIdentity();
  return max_abs(SparseOp(a - id));
}

}  // namespace

TEST_CASE("simpson sum matches the node loop and the exact integral") {
  const QuadratureSpec q;
  for (double eps : {0.5, 0.125}) {
    for (double omega : {0.0, 0.3, -1.7, 4.0}) {
      const cplx a = simpson_exponential(eps, omega, q);
      const cplx b = simpson_loop(eps, omega, q);
      CHECK(std::abs(a - b) < 1e-9 * std::abs(b));
      CHECK(std::abs(abel_weight(eps, omega, q) - eps / cplx(eps, -omega)) < 1e-6);
    }
  }
  CHECK(abel_weight(0.25, 0.0, q) == cplx(1.0, 0.0));
  CHECK_THROWS_AS(QuadratureSpec({0.0, 40.0}).validate(), Error);
}

TEST_CASE("model validation") {
  ModelSpec s = small_model(0.1);
  CHECK_NOTHROW(s.validate());
  s.abel_epsilons = {0.25, 0.5};
  CHECK_THROWS_AS(s.validate(), Error);
  s.abel_epsilons = {0.5};
  CHECK_THROWS_AS(s.validate(), Error);
  s = small_model(0.1);
  s.interaction.hermitian = false;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("block spectrum diagonalizes H") {
  const Model m = build_model(gali_lee_model(0.1, 1, 2));
  CHECK(m.spectrum.dim == m.space.dim());
  std::size_t total = 0;
  for (const auto& b : m.spectrum.blocks) {
    total += b.indices.size();
    const auto n = static_cast<Eigen::Index>(b.indices.size());
    CMatrix hb(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) hb(r, c) = m.H.coeff(b.indices[r], b.indices[c]);
    CHECK(max_abs(CMatrix(hb * b.vectors - b.vectors * b.energies.asDiagonal())) < 1e-12);
  }
  CHECK(total == static_cast<std::size_t>(m.space.dim()));
  CHECK(m.H0.coeff(0, 0) == cplx{});
}

TEST_CASE("moller and evolution operators") {
  const Model m = build_model(small_model(0.3));
  CHECK(dist_identity(moller(m, 0.0)) < 1e-14);
  for (double t : {1.0, 37.0, 320.0}) {
    const SparseOp om = moller(m, t);
    CHECK(dist_identity(SparseOp(SparseOp(om.adjoint()) * om)) < 1e-10);
  }
  CHECK(dist_identity(evolution(m, 2.5, 2.5)) < 1e-12);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 5; ++i) {
    const double t = u(rng), t1 = u(rng), t0 = u(rng);
    const SparseOp lhs = evolution(m, t, t1) * evolution(m, t1, t0);
    CHECK(max_abs(SparseOp(lhs - evolution(m, t, t0))) < 1e-10);
  }
  // U(t, t0) = e^{iH0 t} e^{-iH(t - t0)} e^{-iH0 t0} against a dense exponential
  const double t = 3.0, t0 = -1.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig{CMatrix(m.H)};
  CVector ph(eig.eigenvalues().size());
  for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::exp(-kI * eig.eigenvalues()(i) * (t - t0));
  const CMatrix mid = eig.eigenvectors() * ph.asDiagonal() * eig.eigenvectors().adjoint();
  CVector l(m.space.dim()), r(m.space.dim());
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    l(i) = std::exp(kI * m.free_energies(i) * t);
    r(i) = std::exp(-kI * m.free_energies(i) * t0);
  }
  const CMatrix expected = l.asDiagonal() * mid * r.asDiagonal();
  CHECK(max_abs(CMatrix(CMatrix(evolution(m, t, t0)) - expected)) < 1e-10);

  const Model f = build_model(free_model(1));
  CHECK(dist_identity(moller(f, 12.0)) < 1e-14);
  CHECK(dist_identity(evolution(f, 4.0, -9.0)) < 1e-14);
}

TEST_CASE("free model scatters trivially") {
  const ModelSpec spec = free_model(3);
  const Model m = build_model(spec);
  const SMatrixResult r = s_matrix(m, spec);
  CHECK(dist_identity(r.S) == 0.0);
  CHECK(r.unconverged.empty());
  CHECK(r.unitarity_defect == 0.0);
  const NormalizationReport n = asymptotic_normalization_check(m, spec, r, 1e-12);
  CHECK(n.in_defect == 0.0);
  CHECK(n.out_defect == 0.0);
  CHECK(n.passed);
}

TEST_CASE("gali-lee scattering") {
  const ModelSpec spec = gali_lee_model();
  const Model m = build_model(spec);
  CHECK(m.space.dim() == 3403);

  const SuperselectionReport hs = superselection_report(m.H, m.space);
  CHECK(hs.max_off_block < 1e-13);
  CHECK(hs.number_commutator > 0.0);

  const SMatrixResult r = s_matrix(m, spec);
  CHECK(r.stages.size() == 3);
  CHECK(r.flags_stable);
  CHECK(r.converged.size() + r.unconverged.size() == 3403);
  CHECK(r.unitarity_defect < 5e-3);
  CHECK(r.intertwining_monotone);
  CHECK(r.energy_commutator_monotone);
  CHECK(r.stages.back().energy_commutator < 5e-3);

  const SuperselectionReport ss = superselection_report(r.S, m.space);
  CHECK(ss.max_off_block < 1e-12);
  CHECK(ss.number_commutator > 0.0);
  CHECK(mass_commutator(r.S, m.space).norm == 0.0);

  // matrix element against the inner product of the asymptotic states, inside the largest block
  const SpectralBlock* big = &m.spectrum.blocks.front();
  for (const auto& b : m.spectrum.blocks)
    if (b.indices.size() > big->indices.size()) big = &b;
  double diff = 0.0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const auto a = big->indices[i * 7], b = big->indices[j * 11];
      diff = std::max(diff, std::abs(s_element_by_states(m, 0.125, spec.quadrature, b, a) - r.S.coeff(b, a)));
    }
  CHECK(diff < 1e-12);

  const NormalizationReport n = asymptotic_normalization_check(m, spec, r, 5e-3);
  CHECK(n.vacuum_overlap == 1.0);
  CHECK(n.passed);
}
