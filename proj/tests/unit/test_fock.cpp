#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "gqft/error.hpp"
#include "gqft/fock.hpp"

using namespace gqft;

namespace {

Species scalar(const std::string& name, double m, Statistics st, int two_s = 0) {
  Species s;
  s.name = name;
  s.mass = m;
  s.spin = SpinLabel{two_s};
  s.statistics = st;
  return s;
}

ModeLattice tiny(Statistics st, int n_max, int two_s = 0) {
  return ModeLattice(2 * kPi, 1, {scalar("a", 1.0, st, two_s)}, n_max);
}

// Permanent (sign = +1) or determinant (sign = -1) by explicit permutation sum.
double perm_sum(const std::vector<std::vector<double>>& m, int sign) {
  const std::size_t n = m.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  double total = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    double term = (sign < 0 && inversions % 2) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

}  // namespace

TEST_CASE("lattice labels") {
  ModeLattice lat(2 * kPi, 3, {scalar("a", 1.0, Statistics::Bose, 1), scalar("b", 2.0, Statistics::Fermi)}, 2);
  CHECK(lat.mode_count() == 27 * 2 + 27);
  for (std::size_t q = 0; q < lat.mode_count(); ++q) CHECK(lat.mode_index(lat.mode(q)) == q);
  CHECK(lat.wrap(2) == -1);
  CHECK(lat.wrap(-2) == 1);
  CHECK(lat.momentum_quantum() == doctest::Approx(1.0));
  CHECK(lat.energy({1, {1, 1, 0}, 0}) == doctest::Approx(0.5));
  CHECK(lat.delta_weight() == doctest::Approx(std::pow(3.0 / (2 * kPi), 3)));
  CHECK_THROWS_AS(ModeLattice(1.0, 4, {scalar("a", 1.0, Statistics::Bose)}, 2), Error);
  CHECK_THROWS_AS(ModeLattice(1.0, 3, {scalar("a", 0.0, Statistics::Bose)}, 2), Error);
}

TEST_CASE("vacuum and single modes") {
  const auto lat = tiny(Statistics::Bose, 3);
  const auto vac = vacuum(lat);
  CHECK(inner(vac, vac) == cplx(1.0));
  CHECK(number_expectation(vac) == 0.0);
  CHECK(annihilate(lat, 0, vac).empty());
  const auto one = create(lat, 0, vac);
  CHECK(std::abs(inner(annihilate(lat, 0, one), vac) - 1.0) < 1e-15);
  CHECK(number_expectation(one) == doctest::Approx(1.0));
}

TEST_CASE("Bose double occupation norm and Pauli exclusion") {
  const auto b = tiny(Statistics::Bose, 3);
  const auto two = create(b, 0, create(b, 0, vacuum(b)));
  CHECK(two.norm() == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(inner(two, two) - 2.0) < 1e-14);
  const auto f = tiny(Statistics::Fermi, 3);
  CHECK(create(f, 0, create(f, 0, vacuum(f))).empty());
}

TEST_CASE("cap overflow is flagged, not fatal") {
  const auto b = tiny(Statistics::Bose, 2);
  auto v = create(b, 0, create(b, 0, vacuum(b)));
  CHECK_FALSE(v.overflowed());
  v = create(b, 0, v);
  CHECK(v.overflowed());
  CHECK(v.empty());
}

TEST_CASE("Fermi sign follows the canonical order") {
  ModeLattice lat(2 * kPi, 1, {scalar("a", 1.0, Statistics::Fermi, 1)}, 2);  // two modes
  const auto k12 = create(lat, 0, create(lat, 1, vacuum(lat)));            // a0^dag a1^dag |0>
  const auto k1 = create(lat, 0, vacuum(lat));
  const auto res = annihilate(lat, 1, k12);
  CHECK(std::abs(inner(k1, res) + 1.0) < 1e-15);
  // exchange symmetry
  const auto k21 = create(lat, 1, create(lat, 0, vacuum(lat)));
  CHECK(std::abs(inner(k12, k21) + 1.0) < 1e-15);
}

TEST_CASE("inner product across lattices is rejected") {
  const auto a = tiny(Statistics::Bose, 2);
  const auto b = tiny(Statistics::Fermi, 2);
  CHECK_THROWS_AS(inner(vacuum(a), vacuum(b)), Error);
}

TEST_CASE("orthonormality reproduces permanents and determinants") {
  for (auto st : {Statistics::Bose, Statistics::Fermi}) {
    ModeLattice lat(2 * kPi, 1, {scalar("a", 1.0, st, 3)}, 3);  // 4 modes
    const int sign = st == Statistics::Bose ? 1 : -1;
    std::vector<std::vector<int>> lists;
    for (int n = 0; n <= 3; ++n) {
      std::vector<int> idx(static_cast<std::size_t>(n), 0);
      std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
          lists.push_back(idx);
          return;
        }
        for (int q = 0; q < 4; ++q) {
          idx[static_cast<std::size_t>(pos)] = q;
          rec(pos + 1);
        }
      };
      rec(0);
    }
    auto build = [&](const std::vector<int>& l) {
      FockVector v = vacuum(lat);
      for (auto it = l.rbegin(); it != l.rend(); ++it) v = create(lat, static_cast<std::size_t>(*it), v);
      return v;
    };
    for (const auto& l1 : lists)
      for (const auto& l2 : lists) {
        double expect = 0.0;
        if (l1.size() == l2.size()) {
          std::vector<std::vector<double>> m(l1.size(), std::vector<double>(l1.size()));
          for (std::size_t i = 0; i < l1.size(); ++i)
            for (std::size_t j = 0; j < l1.size(); ++j) m[i][j] = l1[i] == l2[j] ? 1.0 : 0.0;
          expect = l1.empty() ? 1.0 : perm_sum(m, sign);
        }
        CHECK(std::abs(inner(build(l1), build(l2)) - expect) < 1e-12);
      }
  }
}

TEST_CASE("create and annihilate are mutually adjoint") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (auto st : {Statistics::Bose, Statistics::Fermi}) {
    FockSpace space(ModeLattice(2 * kPi, 1, {scalar("a", 1.0, st, 2)}, 3));
    auto random_vec = [&] {
      CVector v(space.dim());
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(n(rng), n(rng));
      return space.from_dense(v);
    };
    for (int trial = 0; trial < 5; ++trial) {
      const auto u = random_vec();
      const auto v = random_vec();
      for (std::size_t q = 0; q < 3; ++q) {
        // create(q) u may overflow; compare on the truncated space where both sides are defined
        const cplx lhs = inner(create(space.lattice(), q, u), v);
        const cplx rhs = inner(u, annihilate(space.lattice(), q, v));
        CHECK(std::abs(lhs - rhs) < 1e-12);
      }
    }
  }
}

TEST_CASE("mode commutators hold on sub-cap states") {
  for (auto st : {Statistics::Bose, Statistics::Fermi}) {
    FockSpace space(ModeLattice(2 * kPi, 1, {scalar("a", 1.0, st, 3)}, 3));
    CHECK(mode_commutator_check(space, 1e-12).passed);
  }
  // with a non-binding cap every Fermi state is included
  FockSpace full(ModeLattice(2 * kPi, 1, {scalar("a", 1.0, Statistics::Fermi, 2)}, 3));
  CHECK(full.subcap_indices().size() == static_cast<std::size_t>(full.dim()));
  CHECK(full.dim() == 8);
}

TEST_CASE("number operator") {
  FockSpace space(ModeLattice(2 * kPi, 1, {scalar("a", 1.0, Statistics::Bose, 1)}, 3));
  const SparseOp N = space.number_operator();
  SparseOp sum(space.dim(), space.dim());
  for (std::size_t q = 0; q < 2; ++q) sum += space.creation(q) * space.annihilation(q);
  CHECK(max_abs(SparseOp(N - sum)) < 1e-14);
  const auto cols = space.subcap_indices();
  for (std::size_t q = 0; q < 2; ++q) {
    const SparseOp c = graded_commutator(N, space.creation(q), 1) - space.creation(q);
    CHECK(restricted_max(c, cols, space.dim()) < 1e-14);
  }
}

TEST_CASE("normal-ordered monomials span the operator space") {
  const FockSpace bose(tiny(Statistics::Bose, 2));
  REQUIRE(bose.dim() == 3);
  const SpanReport full = monomial_span(bose, 2);
  CHECK(full.monomials == 9);
  CHECK(full.target == 9);
  CHECK(full.rank == 9);
  CHECK(monomial_span(bose, 1).rank == 4);

  const FockSpace fermi(tiny(Statistics::Fermi, 1));
  CHECK(monomial_span(fermi, 1).rank == 4);
  const FockSpace two(tiny(Statistics::Fermi, 2, 1));
  CHECK(monomial_span(two, 1).rank == 16);
  CHECK_THROWS_AS(monomial_span(FockSpace(ModeLattice(2 * kPi, 3, {scalar("a", 1.0, Statistics::Bose)}, 1)), 1),
                  Error);
}
