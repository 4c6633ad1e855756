#include <map>
#include <random>

#include "gqft/error.hpp"
#include "gqft/invariance.hpp"
#include "suite.hpp"

namespace gqft::detail {

namespace {

struct Element {
  std::string label;
  GridCompatibleElement gc;
  SparseOp u;
  bool boost = false;
};

// One particle species with its antiparticle partner and U(g) for every sampled element.
struct Prepared {
  Species species;
  FockSpace space;
  std::vector<Element> elements;
};

Prepared prepare(const HarnessConfig& cfg, const Species& s) {
  Prepared p{s, FockSpace(config_lattice(cfg, with_partner(cfg, s))), {}};
  const ModeLattice& lat = p.space.lattice();
  for (const auto& smp : sample_elements(lat, cfg.seed, cfg.random_words, true)) {
    const auto gc = make_grid_compatible(compose_word(smp.word), lat);
    p.elements.push_back({smp.label, gc, galilei_unitary(gc, p.space), smp.boost});
  }
  GalileiElement t;
  t.b = 0.5;
  const auto gc = make_grid_compatible(t, lat);
  p.elements.push_back({"time", gc, galilei_unitary(gc, p.space), false});
  return p;
}

const std::vector<IntVec3>& probe_points() {
  static const std::vector<IntVec3> pts{{0, 0, 0}, {1, 0, -1}, {0, 1, 0}};
  return pts;
}

SparseOp dagger(const SparseOp& a) { return SparseOp(a.adjoint()); }

double diff(const SparseOp& a, const SparseOp& b) { return max_abs(SparseOp(a - b)); }

// exp(i H0 t / hbar) O exp(-i H0 t / hbar) for diagonal H0.
SparseOp heisenberg_free(const SparseOp& o, const SparseOp& h0, double t, double hbar) {
  SparseOp out = o;
  for (Eigen::Index k = 0; k < out.outerSize(); ++k)
    for (SparseOp::InnerIterator it(out, k); it; ++it)
      it.valueRef() *= std::exp(kI * (h0.coeff(it.row(), it.row()).real() - h0.coeff(it.col(), it.col()).real()) * t / hbar);
  return out;
}

// L^{-3/2} sum_p exp(i(E t - p.x)/hbar) a(p, lambda), assembled from the mode ladder operators.
SparseOp explicit_annihilation_field(const FockSpace& space, int sp, int two_lambda, const GridPoint& x) {
  const ModeLattice& lat = space.lattice();
  SparseOp out(space.dim(), space.dim());
  const Vec3 pos = lat.position(x.j);
  for (std::size_t k = 0; k < lat.momentum_count(); ++k) {
    const Mode m{sp, lat.momentum_label(k), two_lambda};
    const double phase = (lat.energy(m) * x.t - lat.momentum(m.k).dot(pos)) / lat.hbar();
    out += space.annihilation(lat.mode_index(m)) * (std::exp(kI * phase) / std::pow(lat.box_length(), 1.5));
  }
  return out;
}

struct ModeTarget {
  IntVec3 k;
  double phase;  // E' b - p'.a
};

ModeTarget mode_target(const GridCompatibleElement& g, const ModeLattice& lat, const Mode& m) {
  IntVec3 img{};
  for (int r = 0; r < 3; ++r) {
    int v = g.boost[static_cast<std::size_t>(m.species)][static_cast<std::size_t>(r)];
    for (int c = 0; c < 3; ++c) v += g.rotation(r, c) * m.k[static_cast<std::size_t>(c)];
    img[static_cast<std::size_t>(r)] = v;
  }
  const IntVec3 k = lat.wrap(img);
  const double e = lat.energy({m.species, k, m.two_lambda});
  return {k, e * g.g.b - lat.momentum(k).dot(g.g.a)};
}

// Runs fn over species, elements, probe points, and spin components; returns the max residual.
template <typename F>
double over_laws(const std::vector<Prepared>& prep, F&& fn) {
  double worst = 0.0;
  for (const auto& p : prep)
    for (const auto& e : p.elements)
      for (std::size_t i = 0; i < probe_points().size(); ++i) {
        const double t = i == 0 ? 0.0 : 0.7;
        if (e.boost && t != 0.0) continue;
        for (int l = 0; l < p.species.spin.dim(); ++l)
          worst = std::max(worst, fn(p, e, FieldSpec{0, p.species.spin.two_lambda(l), FieldVariant::Annihilation,
                                                     GridPoint{probe_points()[i], t}}));
      }
  return worst;
}

std::string sample_count(const std::vector<Prepared>& prep) {
  std::size_t n = 0;
  for (const auto& p : prep) n += p.elements.size();
  return std::to_string(n) + " elements over " + std::to_string(prep.size()) + " species";
}

Species with_weights(Species s, cplx xi, cplx eta, Statistics st) {
  s.xi = xi;
  s.eta = eta;
  s.statistics = st;
  return s;
}

}  // namespace

SuiteReport run_fields(const HarnessConfig& cfg) {
  SuiteRun run("fields");
  const auto particles = particle_species(cfg);
  Lazy<std::vector<Prepared>> lazy_prep([&] {
    std::vector<Prepared> out;
    for (const auto& s : particles) out.push_back(prepare(cfg, s));
    return out;
  });
  const double law_tol = 1e-10;

  run.check("def-destf-annihilation-field", [&] {
    const auto& prep = lazy_prep.get();
    double worst = 0.0;
    for (const auto& p : prep) {
      const CVector vac = p.space.to_dense(vacuum(p.space.lattice()));
      for (const auto& j : probe_points())
        for (double t : {0.0, 0.7})
          for (int l = 0; l < p.species.spin.dim(); ++l) {
            const GridPoint x{j, t};
            const int tl = p.species.spin.two_lambda(l);
            const SparseOp psi = annihilation_field(p.space, 0, tl, x);
            worst = std::max(worst, diff(psi, explicit_annihilation_field(p.space, 0, tl, x)));
            worst = std::max(worst, (psi * vac).norm());
          }
    }
    return below(worst, 1e-13);
  });

  run.check("def-creaf-creation-field", [&] {
    const auto& prep = lazy_prep.get();
    double worst = 0.0;
    for (const auto& p : prep)
      for (const auto& j : probe_points())
        for (int l = 0; l < p.species.spin.dim(); ++l) {
          const GridPoint x{j, 0.4};
          const int tl = p.species.spin.two_lambda(l);
          worst = std::max(worst, diff(realize_field(p.space, {0, tl, FieldVariant::Creation, x}),
                                       dagger(annihilation_field(p.space, 0, tl, x))));
        }
    return below(worst, 1e-14);
  });

  run.check("def-gener-general-field", [&] {
    const auto& prep = lazy_prep.get();
    double worst = 0.0;
    for (const auto& p : prep) {
      const CMatrix cinv = conjugation_matrix(p.species.spin).inverse();
      const int partner = antiparticle_partner(p.space.lattice(), 0);
      for (const auto& j : probe_points()) {
        const GridPoint x{j, 0.0};
        for (int l = 0; l < p.species.spin.dim(); ++l) {
          const int tl = p.species.spin.two_lambda(l);
          SparseOp anti(p.space.dim(), p.space.dim());
          for (int mu = 0; mu < p.species.spin.dim(); ++mu)
            anti += realize_field(p.space, {partner, p.species.spin.two_lambda(mu), FieldVariant::Creation, x}) *
                    cinv(l, mu);
          worst = std::max(worst, diff(realize_field(p.space, {0, tl, FieldVariant::AntiparticleCreation, x}), anti));
          const SparseOp expected = annihilation_field(p.space, 0, tl, x) * p.species.xi + anti * p.species.eta;
          worst = std::max(worst, diff(general_field(p.space, 0, tl, x), expected));
        }
      }
    }
    return below(worst, 1e-14, "psi^{-c dagger} from C^-1 and the partner creation field");
  });

  run.check("def-antiparticle-partner", [&] {
    const auto& prep = lazy_prep.get();
    double worst = 0.0;
    std::string detail;
    for (const auto& p : prep) {
      const ModeLattice& lat = p.space.lattice();
      const int k = antiparticle_partner(lat, 0);
      if (k < 0) return below(1.0, 0.5, p.species.name + ": no partner");
      const Species& b = lat.species(k);
      worst = std::max({worst, std::abs(b.mass + p.species.mass),
                        b.spin == p.species.spin && b.statistics == p.species.statistics ? 0.0 : 1.0});
      require_partner(lat, 0, FieldVariant::General);
      // the antiparticle field creates one quantum of mass -m
      const CVector vac = p.space.to_dense(vacuum(lat));
      const CVector one =
          realize_field(p.space, {0, p.species.spin.two_lambda(0), FieldVariant::AntiparticleCreation, {}}) * vac;
      worst = std::max(worst, (p.space.total_mass_operator() * one + p.species.mass * one).norm());
    }
    int rejected = 0;
    Species lone = particles.front();
    lone.eta = 0.5;
    try {
      require_partner(config_lattice(cfg, {lone}, 1), 0, FieldVariant::General);
    } catch (const Error& e) {
      rejected += e.code() == ErrorCode::MissingAntiparticle;
    }
    auto wrong = with_partner(cfg, lone);
    wrong[1].mass = -2.0 * lone.mass;
    try {
      require_partner(config_lattice(cfg, wrong, 1), 0, FieldVariant::AntiparticleCreation);
    } catch (const Error& e) {
      rejected += e.code() == ErrorCode::PartnerMassMismatch;
    }
    detail = std::to_string(rejected) + "/2 invalid partner setups rejected";
    return below(worst + (2 - rejected), 1e-13, detail);
  });

  run.check("axiom-field-time-dependence", [&] {
    const auto& prep = lazy_prep.get();
    double worst = 0.0;
    for (const auto& p : prep) {
      const SparseOp h0 = free_hamiltonian(p.space);
      const double hbar = p.space.lattice().hbar();
      for (const auto& j : probe_points())
        for (auto variant : {FieldVariant::Annihilation, FieldVariant::Creation, FieldVariant::General})
          for (double t : {0.7, -1.3}) {
            const SparseOp at0 = realize_field(p.space, {0, 0 - p.species.spin.two_s, variant, {j, 0.0}});
            const SparseOp att = realize_field(p.space, {0, 0 - p.species.spin.two_s, variant, {j, t}});
            worst = std::max(worst, diff(att, heisenberg_free(at0, h0, -t, hbar)));
          }
    }
    return below(worst, 1e-12, "psi, psi^+ and the general field at t = 0.7, -1.3");
  });

  run.check("axiom-causa-equal-time-rules", [&] {
    const auto& prep = lazy_prep.get();
    double worst = 0.0;
    for (const auto& p : prep)
      for (const auto& a : probe_points())
        for (const auto& b : probe_points())
          for (int l1 = 0; l1 < p.species.spin.dim(); ++l1)
            for (int l2 = 0; l2 < p.species.spin.dim(); ++l2) {
              const FieldSpec f{0, p.species.spin.two_lambda(l1), FieldVariant::Annihilation, {a, 0.0}};
              const FieldSpec g{0, p.species.spin.two_lambda(l2), FieldVariant::Annihilation, {b, 0.0}};
              worst = std::max(worst, equal_time_commutator(p.space, f, g, 0, 1e-12).max());
              worst = std::max(worst, equal_time_commutator(p.space, f, g, 0, 1e-12, false).max());
            }
    return below(worst, 1e-12, "sub-cap columns");
  });

  const std::vector<std::pair<cplx, cplx>> weights{{1.0, 0.0},      {1.0, 0.5},  {0.6, cplx(0, 0.8)},
                                                   {1.0, 1.0},      {0.5, -0.5}, {0.0, 1.0}};
  auto general_rule = [&](const Species& s) {
    const FockSpace space(config_lattice(cfg, with_partner(cfg, s), 2));
    double worst = 0.0;
    for (const auto& a : probe_points())
      for (const auto& b : probe_points()) {
        const FieldSpec f{0, s.spin.two_lambda(0), FieldVariant::General, {a, 0.0}};
        FieldSpec g = f;
        g.x.j = b;
        worst = std::max(worst, equal_time_commutator(space, f, g, 0, 1e-11).max());
        worst = std::max(worst, equal_time_commutator(space, f, g, 0, 1e-11, false).max());
      }
    return worst;
  };

  run.check("thm-comgen-commutator", [&] {
    double worst = 0.0;
    for (const auto& s : particles)
      for (const auto& [xi, eta] : weights) worst = std::max(worst, general_rule(with_weights(s, xi, eta, s.statistics)));
    return below(worst, 1e-11, std::to_string(weights.size()) + " (xi, eta) pairs per species");
  });

  run.check("thm-stat-no-statistics", [&] {
    double worst = 0.0;
    for (const auto& s : particles)
      for (auto st : {Statistics::Bose, Statistics::Fermi})
        worst = std::max(worst, general_rule(with_weights(s, 1.0, 0.5, st)));
    return below(worst, 1e-11, "both statistics at the same spin, |xi| != |eta|");
  });

  run.check("axiom-irred-vacuum-invariance", [&] {
    const auto& prep = lazy_prep.get();
    double worst = 0.0;
    for (const auto& p : prep) {
      const CVector vac = p.space.to_dense(vacuum(p.space.lattice()));
      worst = std::max(worst, (p.space.total_mass_operator() * vac).norm());
      for (const auto& e : p.elements) worst = std::max(worst, (e.u * vac - vac).norm());
    }
    return below(worst, 1e-14, sample_count(prep));
  });

  run.check("thm-repre-representation-action", [&] {
    const auto& prep = lazy_prep.get();
    double worst = 0.0;
    for (const auto& p : prep) {
      const ModeLattice& lat = p.space.lattice();
      const SparseOp id = sparse_identity(p.space.dim());
      const CVector vac = p.space.to_dense(vacuum(lat));
      for (const auto& e : p.elements) {
        worst = std::max(worst, diff(dagger(e.u) * e.u, id));
        for (std::size_t q = 0; q < lat.mode_count(); ++q) {
          const Mode m = lat.mode(q);
          const ModeTarget tgt = mode_target(e.gc, lat, m);
          CVector img = e.u * (p.space.creation(q) * vac);
          for (int l = 0; l < lat.species(m.species).spin.dim(); ++l) {
            const Occupation occ{static_cast<std::uint16_t>(
                lat.mode_index({m.species, tgt.k, lat.species(m.species).spin.two_lambda(l)}))};
            img(*p.space.index_of(occ)) = 0.0;
          }
          worst = std::max(worst, img.norm());
        }
      }
    }
    return below(worst, 1e-12, "unitarity and one-particle support");
  });

  // U a^+(p, l) U^-1 against exp(-i(E' b - p'.a)/hbar) sum_l' D_l'l(R) a^+(p', l')
  auto creation_law = [&](const Prepared& p, const Element& e, std::size_t q) {
    const ModeLattice& lat = p.space.lattice();
    const Mode m = lat.mode(q);
    const SpinLabel spin = lat.species(m.species).spin;
    const CMatrix d = wigner_d(spin, e.gc.g.R).m;
    const ModeTarget tgt = mode_target(e.gc, lat, m);
    SparseOp expected(p.space.dim(), p.space.dim());
    const int col = spin.index_of(m.two_lambda);
    for (int l = 0; l < spin.dim(); ++l)
      expected += p.space.creation(lat.mode_index({m.species, tgt.k, spin.two_lambda(l)})) * d(l, col);
    expected *= std::exp(-kI * tgt.phase / lat.hbar());
    return expected;
  };

  run.check("thm-trans-creation-operator-law", [&] {
    const auto& prep = lazy_prep.get();
    double worst = 0.0;
    for (const auto& p : prep)
      for (const auto& e : p.elements)
        for (std::size_t q = 0; q < p.space.lattice().mode_count(); ++q)
          worst = std::max(worst, diff(e.u * p.space.creation(q) * dagger(e.u), creation_law(p, e, q)));
    return below(worst, 1e-12, sample_count(prep) + ", particle and partner modes");
  });

  run.check("thm-transa-annihilation-operator-law", [&] {
    const auto& prep = lazy_prep.get();
    double worst = 0.0;
    for (const auto& p : prep) {
      const ModeLattice& lat = p.space.lattice();
      for (const auto& e : p.elements)
        for (std::size_t q = 0; q < lat.mode_count(); ++q) {
          const Mode m = lat.mode(q);
          const SpinLabel spin = lat.species(m.species).spin;
          const CMatrix dinv = wigner_d(spin, e.gc.g.R.inverse()).m;
          const ModeTarget tgt = mode_target(e.gc, lat, m);
          SparseOp expected(p.space.dim(), p.space.dim());
          const int row = spin.index_of(m.two_lambda);
          for (int l = 0; l < spin.dim(); ++l)
            expected += p.space.annihilation(lat.mode_index({m.species, tgt.k, spin.two_lambda(l)})) * dinv(row, l);
          expected *= std::exp(kI * tgt.phase / lat.hbar());
          worst = std::max(worst, diff(e.u * p.space.annihilation(q) * dagger(e.u), expected));
        }
    }
    return below(worst, 1e-12, "D(R^-1) contracted on the second index");
  });

  run.check("thm-alpha-beta-law", [&] {
    const auto& prep = lazy_prep.get();
    double worst = 0.0;
    for (const auto& p : prep) {
      const ModeLattice& lat = p.space.lattice();
      const int b = antiparticle_partner(lat, 0);
      const SpinLabel spin = lat.species(b).spin;
      const CMatrix cinv = conjugation_matrix(spin).inverse();
      auto beta = [&](const IntVec3& k, int l) {
        SparseOp out(p.space.dim(), p.space.dim());
        for (int mu = 0; mu < spin.dim(); ++mu)
          out += p.space.creation(lat.mode_index({b, k, spin.two_lambda(mu)})) * cinv(l, mu);
        return out;
      };
      for (const auto& e : p.elements) {
        const CMatrix dinv = wigner_d(spin, e.gc.g.R.inverse()).m;
        for (std::size_t k = 0; k < lat.momentum_count(); ++k) {
          const Mode m{b, lat.momentum_label(k), spin.two_lambda(0)};
          const ModeTarget tgt = mode_target(e.gc, lat, m);
          for (int l = 0; l < spin.dim(); ++l) {
            SparseOp expected(p.space.dim(), p.space.dim());
            for (int j = 0; j < spin.dim(); ++j) expected += beta(tgt.k, j) * dinv(l, j);
            expected *= std::exp(-kI * tgt.phase / lat.hbar());
            worst = std::max(worst, diff(e.u * beta(m.k, l) * dagger(e.u), expected));
          }
        }
      }
    }
    return below(worst, 1e-12, "partner modes p' = R p - m v");
  });

  run.check("thm-transc-phase-identity", [&] {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<Rotation> rots = octahedral_rotations();
    for (int i = 0; i < 50; ++i) rots.emplace_back(Eigen::Quaterniond(n(rng), n(rng), n(rng), n(rng)).normalized());
    double worst = 0.0;
    for (int two_s = 0; two_s <= 8; ++two_s) {
      const SpinLabel s{two_s};
      const CMatrix c = conjugation_matrix(s);
      const CMatrix cinv = c.inverse();
      for (const auto& r : rots)
        worst = std::max(worst, max_abs(CMatrix(wigner_d(s, r).m.transpose() - c * wigner_d(s, r.inverse()).m * cinv)));
    }
    return below(worst, 1e-12, "s = 0 .. 4, " + std::to_string(rots.size()) + " rotations");
  });

  auto field_law = [&](FieldVariant v, DInverseForm form) {
    return over_laws(lazy_prep.get(), [&](const Prepared& p, const Element& e, FieldSpec f) {
      f.variant = v;
      return verify_field_transformation(e.gc, e.u, p.space, f, law_tol, form).max();
    });
  };

  run.check("axiom-ftran-local-transformation", [&] {
    const auto& prep = lazy_prep.get();
    const double w = std::max(field_law(FieldVariant::Annihilation, DInverseForm::Direct),
                              field_law(FieldVariant::Annihilation, DInverseForm::Adjoint));
    return below(w, law_tol, sample_count(prep) + ", D(R^-1) direct and as D(R)^dagger");
  });

  run.check("thm-psidag-creation-law", [&] {
    const auto& prep = lazy_prep.get();
    return below(field_law(FieldVariant::Creation, DInverseForm::Direct), law_tol, sample_count(prep));
  });

  run.check("thm-transc-antiparticle-law", [&] {
    const auto& prep = lazy_prep.get();
    return below(field_law(FieldVariant::AntiparticleCreation, DInverseForm::Direct), law_tol, sample_count(prep));
  });

  run.check("thm-gener-general-field-law", [&] {
    const auto& prep = lazy_prep.get();
    return below(field_law(FieldVariant::General, DInverseForm::Direct), law_tol, sample_count(prep));
  });

  run.check("proof-ftran-phase-cancellation", [&] {
    std::mt19937_64 rng(cfg.seed + 7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::normal_distribution<double> n(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      GalileiElement g;
      g.b = u(rng);
      g.a = Vec3(u(rng), u(rng), u(rng));
      g.v = Vec3(u(rng), u(rng), u(rng));
      g.R = Rotation(Eigen::Quaterniond(n(rng), n(rng), n(rng), n(rng)).normalized());
      const double m = 0.5 + std::abs(u(rng)), w = u(rng);
      const Vec3 p(u(rng), u(rng), u(rng));
      const SpaceTimePoint x{Vec3(u(rng), u(rng), u(rng)), u(rng)};
      const SpaceTimePoint xp = act(g, x);
      const Vec3 pp = g.R.apply(p) + m * g.v;
      const double e = p.squaredNorm() / (2 * m) + w, ep = pp.squaredNorm() / (2 * m) + w;
      const double lhs = ep * xp.t - pp.dot(xp.x);
      const double rhs = (e * x.t - p.dot(x.x)) + (ep * g.b - pp.dot(g.a)) - m * cocycle_gamma(g, x);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    return below(worst, 1e-12, "1000 random (g, p, x, t, m)");
  });

  run.check("proof-pairw-phase-cancellation", [&] {
    const auto& prep = lazy_prep.get();
    double worst = 0.0;
    for (const auto& p : prep) {
      const ModeLattice& lat = p.space.lattice();
      std::mt19937_64 rng(cfg.seed + 11);
      std::normal_distribution<double> n(0.0, 1.0);
      CMatrix probes(p.space.dim(), 4);
      for (Eigen::Index c = 0; c < probes.size(); ++c) probes(c) = cplx(n(rng), n(rng));
      probes.colwise().normalize();
      std::map<std::pair<IntVec3, double>, SparseOp> cache;
      auto density = [&](const GridPoint& x) -> const SparseOp& {
        auto [it, fresh] = cache.try_emplace({x.j, x.t}, p.space.dim(), p.space.dim());
        if (fresh)
          for (int l = 0; l < p.species.spin.dim(); ++l) {
            const SparseOp a = annihilation_field(p.space, 0, p.species.spin.two_lambda(l), x);
            it->second += dagger(a) * a;
          }
        return it->second;
      };
      for (const auto& e : p.elements)
        for (const auto& j : probe_points()) {
          IntVec3 img{};
          for (int r = 0; r < 3; ++r) {
            int v = e.gc.translation[static_cast<std::size_t>(r)];
            for (int c = 0; c < 3; ++c) v += e.gc.rotation(r, c) * j[static_cast<std::size_t>(c)];
            img[static_cast<std::size_t>(r)] = v;
          }
          const GridPoint xp{lat.wrap(img), e.gc.g.b};
          const CMatrix lhs = e.u * (density({j, 0.0}) * (dagger(e.u) * probes));
          worst = std::max(worst, max_abs(CMatrix(lhs - density(xp) * probes)));
        }
    }
    return below(worst, 1e-11, sample_count(prep) + ", action on 4 random unit vectors");
  });

  run.check("group-projective-representation", [&] {
    const auto& prep = lazy_prep.get();
    double worst = 0.0;
    std::size_t pairs = 0;
    for (const auto& p : prep)
      for (std::size_t i = 0; i + 1 < p.elements.size(); i += 3) {
        worst = std::max(
            worst, projective_composition_check(p.elements[i + 1].gc.g, p.elements[i].gc.g, p.space, 1e-11).max());
        ++pairs;
      }
    return below(worst, 1e-11, std::to_string(pairs) + " element pairs, non-wrapping columns");
  });

  run.check("thm-non-hermiticity", [&] {
    const Species& s = particles.front();
    const FockSpace space(config_lattice(cfg, {s}));
    GalileiElement boost;
    boost.v = Vec3(minimal_boost_speed(space.lattice()), 0.0, 0.0);
    const HermiticityReport rep = hermiticity_obstruction(space, 0, boost, 1e-2, 1e-12);
    double below_bound = 0.0;
    for (const auto& pt : rep.points) below_bound = std::max(below_bound, pt.bound - pt.residual);
    Outcome o{rep.passed ? Status::Pass : Status::Fail, std::max(rep.max_test_mode_residual, rep.max_zero_gamma_residual),
              1e-12,
              "min residual at m gamma != 0: " + fmt(rep.min_nonzero_gamma_residual) + "; bound excess " +
                  fmt(below_bound)};
    if (below_bound > 1e-12) o.status = Status::Fail;
    return o;
  });

  run.check("thm-dife-equation-of-motion", [&] {
    const Species& s = particles.front();
    const FockSpace space(config_lattice(cfg, {s}, std::min(cfg.n_max, 2)));
    const SparseOp h = free_hamiltonian(space) + realize(two_body_polynomial(space.lattice(), 0, 0.5, 1.0), space);
    const FieldSpec f{0, s.spin.two_lambda(0), FieldVariant::Annihilation, {{1, 0, -1}, 0.0}};
    const EomReport rep = equation_of_motion_check(space, f, h, 0.3, 0.1, 1e-12);
    const bool in_band = rep.exact || (rep.ratio >= 3.2 && rep.ratio <= 4.8);
    return Outcome{in_band ? Status::Pass : Status::Fail, rep.ratio, 4.0,
                   "residual ratio dt : dt/2 = " + fmt(rep.ratio) + " (dt = 0.1, interacting H); band [3.2, 4.8]"};
  });

  return run.finish();
}

}  // namespace gqft::detail
