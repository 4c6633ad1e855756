#include <algorithm>
#include <functional>
#include <numeric>

#include "gqft/fields.hpp"
#include "suite.hpp"

namespace gqft::detail {

namespace {

Species species(const std::string& name, double m, int two_s, Statistics st) {
  Species s;
  s.name = name;
  s.mass = m;
  s.spin = SpinLabel{two_s};
  s.statistics = st;
  return s;
}

// Three four-mode lattices: Bose, Fermi and mixed statistics, N_max = 3.
std::vector<ModeLattice> brute_lattices(const HarnessConfig& cfg) {
  std::vector<ModeLattice> out;
  out.emplace_back(cfg.box_length, 1, std::vector<Species>{species("b", 1.0, 3, Statistics::Bose)}, 3, cfg.hbar);
  out.emplace_back(cfg.box_length, 1, std::vector<Species>{species("f", 1.0, 3, Statistics::Fermi)}, 3, cfg.hbar);
  out.emplace_back(cfg.box_length, 1,
                   std::vector<Species>{species("b", 1.0, 1, Statistics::Bose), species("f", 1.0, 1, Statistics::Fermi)},
                   3, cfg.hbar);
  return out;
}

using Tuple = std::vector<std::size_t>;

std::vector<Tuple> ordered_tuples(std::size_t modes, int max_len) {
  std::vector<Tuple> out{{}};
  std::vector<Tuple> layer{{}};
  for (int n = 1; n <= max_len; ++n) {
    std::vector<Tuple> next;
    for (const auto& t : layer)
      for (std::size_t q = 0; q < modes; ++q) {
        Tuple u = t;
        u.push_back(q);
        next.push_back(u);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// a^dagger(t[0]) ... a^dagger(t[N-1]) |0>, unnormalized.
FockVector product_state(const ModeLattice& lat, const Tuple& t) {
  FockVector v = vacuum(lat);
  for (auto it = t.rbegin(); it != t.rend(); ++it) v = create(lat, *it, v);
  return v;
}

double fermion_parity(const ModeLattice& lat, const std::vector<std::size_t>& keys) {
  int inv = 0;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i + 1; j < keys.size(); ++j)
      if (lat.is_fermion_mode(keys[i]) && lat.is_fermion_mode(keys[j]) && keys[i] > keys[j]) ++inv;
  return inv % 2 ? -1.0 : 1.0;
}

double distance(const FockSpace& space, const FockVector& a, const FockVector& b) {
  return (space.to_dense(a) - space.to_dense(b)).cwiseAbs().maxCoeff();
}

// Number of basis states with at most n_max quanta: product of per-mode generating polynomials.
double combinatorial_dimension(const ModeLattice& lat) {
  std::vector<double> coeff(static_cast<std::size_t>(lat.n_max()) + 1, 0.0);
  coeff[0] = 1.0;
  for (std::size_t q = 0; q < lat.mode_count(); ++q) {
    const int top = lat.is_fermion_mode(q) ? 1 : lat.n_max();
    std::vector<double> next(coeff.size(), 0.0);
    for (std::size_t n = 0; n < coeff.size(); ++n)
      for (int k = 0; k <= top && n + static_cast<std::size_t>(k) < coeff.size(); ++k)
        next[n + static_cast<std::size_t>(k)] += coeff[n];
    coeff = std::move(next);
  }
  return std::accumulate(coeff.begin(), coeff.end(), 0.0);
}

struct Label {
  IntVec3 j;
  int two_lambda;
};

std::vector<Label> field_labels(const ModeLattice& lat, int sp) {
  std::vector<Label> out;
  for (std::size_t k = 0; k < lat.momentum_count(); ++k)
    for (int i = 0; i < lat.species(sp).spin.dim(); ++i)
      out.push_back({lat.momentum_label(k), lat.species(sp).spin.two_lambda(i)});
  return out;
}

}  // namespace

SuiteReport run_fock(const HarnessConfig& cfg) {
  SuiteRun run("fock");
  const auto brute = brute_lattices(cfg);
  std::vector<FockSpace> brute_spaces;
  for (const auto& l : brute) brute_spaces.emplace_back(l);
  const FockSpace full(config_lattice(cfg, cfg.species));
  const auto particles = particle_species(cfg);

  run.check("axiom-espest-vacuum", [&] {
    const ModeLattice& lat = full.lattice();
    const auto vac = full.index_of({});
    if (!vac || *vac != 0) return below(1.0, 0.5, "vacuum is not the first basis state");
    double worst = std::abs(vacuum(lat).norm() - 1.0);
    int zero_quanta = 0;
    for (int q : full.quanta()) zero_quanta += q == 0;
    worst = std::max(worst, std::abs(zero_quanta - 1.0));
    for (std::size_t q = 0; q < lat.mode_count(); ++q)
      worst = std::max(worst, full.annihilation(q).col(0).norm());
    worst = std::max(worst, std::abs(full.number_operator().coeff(0, 0)));
    worst = std::max(worst, std::abs(free_hamiltonian(full).coeff(0, 0)));
    return below(worst, 1e-14, "dim " + std::to_string(full.dim()));
  });

  run.check("thm-gral-basis-generation", [&] {
    double worst = 0.0;
    std::string detail;
    for (const auto& s : particles) {
      const FockSpace space(config_lattice(cfg, {s}));
      if (space.dim() > 2000) {
        detail += s.name + ": skipped (dim " + std::to_string(space.dim()) + "); ";
        continue;
      }
      const auto labels = field_labels(space.lattice(), 0);
      std::vector<SparseOp> fields;
      for (const auto& l : labels)
        fields.push_back(realize_field(space, {0, l.two_lambda, FieldVariant::Creation, {l.j, 0.0}}));
      std::vector<CVector> vecs;
      CVector vac = CVector::Zero(space.dim());
      vac(0) = 1.0;
      std::function<void(const CVector&, std::size_t, int)> grow = [&](const CVector& v, std::size_t from, int n) {
        vecs.push_back(v);
        if (n == space.lattice().n_max()) return;
        for (std::size_t i = from; i < fields.size(); ++i) grow(fields[i] * v, i, n + 1);
      };
      grow(vac, 0, 0);
      CMatrix m(space.dim(), static_cast<Eigen::Index>(vecs.size()));
      for (std::size_t c = 0; c < vecs.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = vecs[c];
      Eigen::ColPivHouseholderQR<CMatrix> qr(m);
      const auto rank = qr.rank();
      worst = std::max(worst, static_cast<double>(space.dim() - rank));
      detail += s.name + ": rank " + std::to_string(rank) + "/" + std::to_string(space.dim()) + "; ";
    }
    return below(worst, 0.5, detail);
  });

  run.check("thm-sime-exchange-symmetry", [&] {
    double worst = 0.0;
    for (const auto& s : particles) {
      const FockSpace space(config_lattice(cfg, {s}));
      const double sign = exchange_sign(s.statistics);
      auto labels = field_labels(space.lattice(), 0);
      labels.resize(std::min<std::size_t>(labels.size(), 6));
      CVector vac = CVector::Zero(space.dim());
      vac(0) = 1.0;
      for (const auto& a : labels)
        for (const auto& b : labels) {
          const SparseOp fa = realize_field(space, {0, a.two_lambda, FieldVariant::Creation, {a.j, 0.0}});
          const SparseOp fb = realize_field(space, {0, b.two_lambda, FieldVariant::Creation, {b.j, 0.0}});
          worst = std::max(worst, (fa * (fb * vac) - sign * (fb * (fa * vac))).cwiseAbs().maxCoeff());
        }
    }
    return below(worst, 1e-13);
  });

  run.check("thm-acpsi-position-state", [&] {
    double worst = 0.0;
    for (const auto& s : particles) {
      const FockSpace space(config_lattice(cfg, {s}));
      const double w = space.lattice().delta_weight();
      CVector vac = CVector::Zero(space.dim());
      vac(0) = 1.0;
      for (const auto& l : field_labels(space.lattice(), 0)) {
        const GridPoint x{l.j, 0.3};
        const CVector v = realize_field(space, {0, l.two_lambda, FieldVariant::Annihilation, x}) *
                          (realize_field(space, {0, l.two_lambda, FieldVariant::Creation, x}) * vac);
        worst = std::max(worst, (v - w * vac).cwiseAbs().maxCoeff() / w);
      }
    }
    return below(worst, 1e-12, "relative to (n/L)^3");
  });

  run.check("thm-crea-creation-action", [&] {
    double worst = 0.0;
    std::size_t tuples = 0;
    for (std::size_t b = 0; b < brute.size(); ++b) {
      const auto& lat = brute[b];
      for (const auto& t : ordered_tuples(lat.mode_count(), 3)) {
        ++tuples;
        const FockVector v = product_state(lat, t);
        Tuple sorted = t;
        std::sort(sorted.begin(), sorted.end());
        bool pauli = false;
        for (std::size_t i = 1; i < sorted.size(); ++i)
          pauli = pauli || (sorted[i] == sorted[i - 1] && lat.is_fermion_mode(sorted[i]));
        FockVector expected(lat);
        if (!pauli) {
          double norm = 1.0;
          for (std::size_t i = 0, run_len = 1; i < sorted.size(); ++i) {
            run_len = (i > 0 && sorted[i] == sorted[i - 1]) ? run_len + 1 : 1;
            norm *= static_cast<double>(run_len);
          }
          Occupation occ(sorted.begin(), sorted.end());
          expected.add(occ, fermion_parity(lat, t) * std::sqrt(norm));
        }
        worst = std::max(worst, distance(brute_spaces[b], v, expected));
        // the sparse matrix agrees with the ladder action
        CVector m = CVector::Zero(brute_spaces[b].dim());
        m(0) = 1.0;
        for (auto it = t.rbegin(); it != t.rend(); ++it) m = brute_spaces[b].creation(*it) * m;
        worst = std::max(worst, (m - brute_spaces[b].to_dense(v)).cwiseAbs().maxCoeff());
      }
    }
    return below(worst, 1e-12, std::to_string(tuples) + " ordered products on 4 modes");
  });

  run.check("thm-crea-annihilation-sum", [&] {
    double worst = 0.0;
    for (std::size_t b = 0; b < brute.size(); ++b) {
      const auto& lat = brute[b];
      for (const auto& t : ordered_tuples(lat.mode_count(), 3))
        for (std::size_t k = 0; k < lat.mode_count(); ++k) {
          const FockVector lhs = annihilate(lat, k, product_state(lat, t));
          FockVector rhs(lat);
          double sign = 1.0;
          for (std::size_t r = 0; r < t.size(); ++r) {
            if (t[r] == k) {
              Tuple rest = t;
              rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(r));
              rhs += sign * product_state(lat, rest);
            }
            if (lat.is_fermion_mode(k) && lat.is_fermion_mode(t[r])) sign = -sign;
          }
          worst = std::max(worst, distance(brute_spaces[b], lhs, rhs));
        }
    }
    return below(worst, 1e-12);
  });

  run.check("thm-norm-orthonormality", [&] {
    double worst = 0.0;
    for (const auto& lat : brute) {
      const auto tuples = ordered_tuples(lat.mode_count(), 3);
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
                  if (lat.is_fermion_mode(a[i]) && lat.is_fermion_mode(a[j]) && p[i] > p[j]) ++inv;
              expected += inv % 2 ? -1.0 : 1.0;
            } while (std::next_permutation(p.begin(), p.end()));
          }
          worst = std::max(worst, std::abs(inner(product_state(lat, b), product_state(lat, a)) - expected));
        }
    }
    return below(worst, 1e-12, "permanent / determinant oracle, N <= 3");
  });

  run.check("thm-comm-canonical-rules", [&] {
    double worst = 0.0;
    for (const auto& s : brute_spaces) worst = std::max(worst, mode_commutator_check(s, 1e-12).max());
    return below(worst, 1e-12, "sub-cap columns");
  });

  run.check("thm-autoad-adjointness", [&] {
    double worst = 0.0;
    for (std::size_t b = 0; b < brute.size(); ++b) {
      const auto& space = brute_spaces[b];
      const auto& lat = brute[b];
      for (std::size_t q = 0; q < lat.mode_count(); ++q) {
        worst = std::max(worst, max_abs(SparseOp(space.creation(q) - SparseOp(space.annihilation(q).adjoint()))));
        for (Eigen::Index i = 0; i < space.dim(); ++i) {
          if (total_quanta(space.state(i)) >= lat.n_max()) continue;
          FockVector v(lat);
          v.add(space.state(i), 1.0);
          for (Eigen::Index j = 0; j < space.dim(); ++j) {
            FockVector u(lat);
            u.add(space.state(j), 1.0);
            worst = std::max(worst, std::abs(inner(u, create(lat, q, v)) - inner(annihilate(lat, q, u), v)));
          }
        }
      }
    }
    return below(worst, 1e-13);
  });

  run.check("thm-acce-accessible-states", [&] {
    double worst = std::abs(static_cast<double>(full.dim()) - combinatorial_dimension(full.lattice()));
    for (const auto& s : brute_spaces)
      worst = std::max(worst, std::abs(static_cast<double>(s.dim()) - combinatorial_dimension(s.lattice())));
    return below(worst, 0.5, "dim " + std::to_string(full.dim()) + " equals the symmetric plus antisymmetric count");
  });

  run.check("def-numoper-number-operator", [&] {
    const ModeLattice& lat = full.lattice();
    const SparseOp n = full.number_operator();
    SparseOp sum(full.dim(), full.dim());
    double comm = 0.0;
    const auto cols = full.subcap_indices();
    for (std::size_t q = 0; q < lat.mode_count(); ++q) {
      const SparseOp ad = full.creation(q);
      sum += ad * full.annihilation(q);
      comm = std::max(comm, restricted_max(SparseOp(n * ad - ad * n - ad), cols, full.dim()));
    }
    double diag = 0.0;
    const auto quanta = full.quanta();
    for (Eigen::Index i = 0; i < full.dim(); ++i) diag = std::max(diag, std::abs(n.coeff(i, i) - cplx(quanta[i])));
    return below(std::max({max_abs(SparseOp(n - sum)), comm, diag}), 1e-12);
  });

  run.check("axiom-oper-irreducibility", [&] {
    const FockSpace one(ModeLattice(cfg.box_length, 1, {species("a", 1.0, 0, Statistics::Bose)}, 2, cfg.hbar));
    const SpanReport r = monomial_span(one, 2);
    const FockSpace two(ModeLattice(cfg.box_length, 1, {species("f", 1.0, 1, Statistics::Fermi)}, 2, cfg.hbar));
    const SpanReport f = monomial_span(two, 1);
    const double missing = static_cast<double>((r.target - r.rank) + (f.target - f.rank));
    return below(missing, 0.5,
                 "Bose mode: rank " + std::to_string(r.rank) + "/" + std::to_string(r.target) +
                     "; two Fermi modes: rank " + std::to_string(f.rank) + "/" + std::to_string(f.target));
  });

  const SparseOp h0 = free_hamiltonian(full);
  auto one_particle_energy = [&](std::size_t q) {
    const ModeLattice& lat = full.lattice();
    const Mode m = lat.mode(q);
    const Species& s = lat.species(m.species);
    return lat.momentum(m.k).squaredNorm() / (2 * s.mass) + s.internal_energy;
  };

  run.check("def-free-hamiltonian", [&] {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < h0.outerSize(); ++k)
      for (SparseOp::InnerIterator it(h0, k); it; ++it)
        if (it.row() != it.col()) worst = std::max(worst, std::abs(it.value()));
    worst = std::max(worst, std::abs(h0.coeff(0, 0)));
    for (Eigen::Index i = 0; i < full.dim(); ++i) {
      const auto& occ = full.state(i);
      double e = 0.0;
      for (auto q : occ) e += one_particle_energy(q);
      worst = std::max(worst, std::abs(h0.coeff(i, i) - e) / std::max(1.0, std::abs(e)));
    }
    return below(worst, 1e-13, "diagonal, additive over quanta");
  });

  run.check("thm-on-shell-condition", [&] {
    double worst = 0.0;
    const ModeLattice& lat = full.lattice();
    for (std::size_t q = 0; q < lat.mode_count(); ++q) {
      Occupation occ{static_cast<std::uint16_t>(q)};
      const auto idx = full.index_of(occ);
      const Mode m = lat.mode(q);
      const Species& s = lat.species(m.species);
      const double e = h0.coeff(*idx, *idx).real();
      worst = std::max(worst, std::abs(e - lat.momentum(m.k).squaredNorm() / (2 * s.mass) - s.internal_energy));
    }
    AlgebraConfig a = cfg.algebra;
    a.hbar = cfg.hbar;
    const GeneratorSet g = build_generators(a);
    const SparseOp p2 = g.P[0] * g.P[0] + g.P[1] * g.P[1] + g.P[2] * g.P[2];
    const SparseOp onshell = g.H - p2 * cplx(1.0 / (2 * a.m)) - sparse_identity(g.dim()) * cplx(a.W);
    worst = std::max(worst, max_abs(onshell));
    return below(worst, 1e-12, "lattice one-particle states and the algebra realization");
  });

  return run.finish();
}

}  // namespace gqft::detail
