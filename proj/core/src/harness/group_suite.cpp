#include <random>
#include <set>

#include "gqft/spin.hpp"
#include "suite.hpp"

namespace gqft::detail {

namespace {

struct ElementSampler {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> u{-1.0, 1.0};
  std::normal_distribution<double> n{0.0, 1.0};

  explicit ElementSampler(std::uint64_t seed) : rng(seed) {}

  Vec3 vec() { return Vec3(u(rng), u(rng), u(rng)); }
  Rotation rotation() {
    Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
    return Rotation(q.normalized());
  }
  GalileiElement element() {
    GalileiElement g;
    g.b = u(rng);
    g.a = vec();
    g.v = vec();
    g.R = rotation();
    return g;
  }
};

Eigen::Matrix<double, 5, 1> column(const SpaceTimePoint& p) {
  Eigen::Matrix<double, 5, 1> c;
  c << p.x, p.t, 1.0;
  return c;
}

std::vector<GalileiElement> grid_elements(const HarnessConfig& cfg, const ModeLattice& lat) {
  std::vector<GalileiElement> out;
  for (const auto& s : sample_elements(lat, cfg.seed, cfg.random_words, true)) out.push_back(compose_word(s.word));
  GalileiElement t;
  t.b = 0.5;
  out.push_back(t);
  return out;
}

}  // namespace

SuiteReport run_group(const HarnessConfig& cfg) {
  SuiteRun run("group");
  const int trials = cfg.group_trials;

  run.check("group-multiplication-law", [&] {
    ElementSampler s(cfg.seed);
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const auto g1 = s.element(), g2 = s.element(), g3 = s.element();
      const HomogeneousMatrix prod = homogeneous_matrix(g2) * homogeneous_matrix(g1);
      worst = std::max(worst, (homogeneous_matrix(compose(g2, g1)) - prod).cwiseAbs().maxCoeff());
      worst = std::max(worst, distance(compose(compose(g3, g2), g1), compose(g3, compose(g2, g1))));
    }
    return below(worst, 1e-12, std::to_string(trials) + " triples");
  });

  run.check("group-identity-inverse", [&] {
    ElementSampler s(cfg.seed + 1);
    double worst = 0.0;
    const GalileiElement e = identity();
    for (int i = 0; i < trials; ++i) {
      const auto g = s.element();
      worst = std::max({worst, distance(compose(e, g), g), distance(compose(g, e), g),
                        distance(compose(g, inverse(g)), e), distance(compose(inverse(g), g), e)});
    }
    return below(worst, 1e-12);
  });

  run.check("group-coordinate-action", [&] {
    ElementSampler s(cfg.seed + 2);
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const auto g1 = s.element(), g2 = s.element();
      const SpaceTimePoint p{s.vec(), s.u(s.rng)};
      const SpaceTimePoint a = act(compose(g2, g1), p);
      const SpaceTimePoint b = act(g2, act(g1, p));
      worst = std::max({worst, (a.x - b.x).cwiseAbs().maxCoeff(), std::abs(a.t - b.t)});
      const auto h = homogeneous_matrix(g1) * column(p);
      worst = std::max(worst, (h - column(act(g1, p))).cwiseAbs().maxCoeff());
    }
    return below(worst, 1e-12);
  });

  run.check("group-projective-cocycle", [&] {
    ElementSampler s(cfg.seed + 3);
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const auto g1 = s.element(), g2 = s.element();
      const SpaceTimePoint p{s.vec(), s.u(s.rng)};
      const double m = 1.5 + s.u(s.rng);
      const double lhs = m * cocycle_gamma(compose(g2, g1), p);
      const double rhs = m * cocycle_gamma(g1, p) + m * cocycle_gamma(g2, act(g1, p)) + projective_phase(g2, g1, m);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    return below(worst, 1e-12);
  });

  run.check("thm-invariant-measure-mode-permutation", [&] {
    const ModeLattice lat = config_lattice(cfg, cfg.species);
    double collisions = 0.0;
    std::size_t maps = 0;
    for (const auto& g : grid_elements(cfg, lat)) {
      const auto gc = make_grid_compatible(g, lat);
      for (std::size_t sp = 0; sp < lat.species().size(); ++sp) {
        std::set<IntVec3> images;
        for (std::size_t k = 0; k < lat.momentum_count(); ++k) {
          const IntVec3 kk = lat.momentum_label(k);
          IntVec3 img{};
          for (int r = 0; r < 3; ++r) {
            int v = gc.boost[sp][static_cast<std::size_t>(r)];
            for (int c = 0; c < 3; ++c) v += gc.rotation(r, c) * kk[static_cast<std::size_t>(c)];
            img[static_cast<std::size_t>(r)] = v;
          }
          images.insert(lat.wrap(img));
        }
        collisions += static_cast<double>(lat.momentum_count() - images.size());
        ++maps;
      }
    }
    return below(collisions, 0.5, std::to_string(maps) + " species maps");
  });

  run.check("spin-homomorphism-unitarity", [&] {
    ElementSampler s(cfg.seed + 4);
    double worst = 0.0;
    for (int two_s = 0; two_s <= 8; ++two_s) {
      const SpinLabel sl{two_s};
      const auto id = CMatrix::Identity(sl.dim(), sl.dim());
      for (int i = 0; i < 20; ++i) {
        const Rotation r1 = s.rotation(), r2 = s.rotation();
        const CMatrix d1 = wigner_d(sl, r1).m, d2 = wigner_d(sl, r2).m;
        worst = std::max(worst, max_abs(CMatrix(wigner_d(sl, r1 * r2).m - d1 * d2)));
        worst = std::max(worst, max_abs(CMatrix(d1.adjoint() * d1 - id)));
      }
      const CMatrix full = wigner_d(sl, Rotation::axis_angle(s.vec().normalized(), 2 * kPi)).m;
      worst = std::max(worst, max_abs(CMatrix(full - (two_s % 2 ? -1.0 : 1.0) * id)));
    }
    return below(worst, 1e-12, "s = 0 .. 4");
  });

  run.check("spin-conjugation-matrix", [&] {
    ElementSampler s(cfg.seed + 5);
    double worst = 0.0;
    for (int two_s = 0; two_s <= 8; ++two_s) {
      const SpinLabel sl{two_s};
      const CMatrix c = conjugation_matrix(sl);
      const auto id = CMatrix::Identity(sl.dim(), sl.dim());
      worst = std::max(worst, max_abs(CMatrix(c.conjugate() * c - (two_s % 2 ? -1.0 : 1.0) * id)));
      worst = std::max(worst, max_abs(CMatrix(c.adjoint() * c - id)));
      for (int i = 0; i < 20; ++i) {
        const CMatrix d = wigner_d(sl, s.rotation()).m;
        worst = std::max(worst, max_abs(CMatrix(d.conjugate() - c * d * c.inverse())));
      }
    }
    return below(worst, 1e-12, "s = 0 .. 4");
  });

  run.check("spin-angular-momentum-algebra", [&] {
    double worst = 0.0;
    const double hbar = cfg.hbar;
    for (int two_s = 0; two_s <= 8; ++two_s) {
      const SpinLabel sl{two_s};
      const auto j = spin_matrices(sl, hbar);
      for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3, c = (a + 2) % 3;
        worst = std::max(worst, max_abs(CMatrix(j[a] * j[b] - j[b] * j[a] - kI * hbar * j[c])));
      }
      const CMatrix j2 = j[0] * j[0] + j[1] * j[1] + j[2] * j[2];
      const double s = sl.value();
      worst = std::max(worst, max_abs(CMatrix(j2 - hbar * hbar * s * (s + 1) * CMatrix::Identity(sl.dim(), sl.dim()))));
    }
    return below(worst, 1e-12, "s = 0 .. 4");
  });

  return run.finish();
}

}  // namespace gqft::detail
