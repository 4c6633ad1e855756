#include "gqft/scattering.hpp"

#include <cmath>
#include <algorithm>
#include <functional>
#include <numeric>

#include "gqft/error.hpp"

namespace gqft {

void QuadratureSpec::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::ConfigInvalid, "quadrature step must be positive");
  if (!(horizon_factor > 0.0)) throw Error(ErrorCode::ConfigInvalid, "quadrature horizon must be positive");
}

void ModelSpec::validate() const {
  quadrature.validate();
  if (abel_epsilons.size() < 2) throw Error(ErrorCode::ConfigInvalid, "abel_epsilons needs at least two entries");
  for (std::size_t i = 0; i < abel_epsilons.size(); ++i) {
    if (!(abel_epsilons[i] > 0.0)) throw Error(ErrorCode::ConfigInvalid, "abel_epsilons must be positive");
    if (i > 0 && !(abel_epsilons[i] < abel_epsilons[i - 1]))
      throw Error(ErrorCode::ConfigInvalid, "abel_epsilons must be strictly decreasing");
  }
  if (!std::isfinite(coupling)) throw Error(ErrorCode::ConfigInvalid, "coupling must be finite");
  if (!(convergence_rel > 0.0)) throw Error(ErrorCode::ConfigInvalid, "convergence threshold must be positive");
  if (!interaction.hermitian) throw Error(ErrorCode::ConfigInvalid, "interaction must be flagged Hermitian");
  interaction.validate(lattice);
}

ModelSpec gali_lee_model(double coupling, int n_per_axis, int n_max, double mass_v) {
  auto scalar = [](const std::string& name, double m) {
    Species s;
    s.name = name;
    s.mass = m;
    return s;
  };
  ModeLattice lat(2 * kPi, n_per_axis, {scalar("theta", 1.0), scalar("N", 1.0), scalar("V", mass_v)}, n_max);
  OperatorPolynomial v = production_polynomial(lat, 2, 1, 0, 1.0);
  return ModelSpec{lat, v, coupling, {0.5, 0.25, 0.125}, QuadratureSpec{}, 1e-2};
}

std::size_t BlockSpectrum::largest_block() const {
  std::size_t m = 0;
  for (const auto& b : blocks) m = std::max(m, b.indices.size());
  return m;
}

BlockSpectrum block_spectrum(const SparseOp& h) {
  const Eigen::Index n = h.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<Eigen::Index(Eigen::Index)> find = [&](Eigen::Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (Eigen::Index k = 0; k < h.outerSize(); ++k)
    for (SparseOp::InnerIterator it(h, k); it; ++it)
      if (it.value() != cplx{}) {
        const auto a = find(it.row()), b = find(it.col());
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
  std::vector<std::vector<Eigen::Index>> groups(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) groups[static_cast<std::size_t>(find(i))].push_back(i);

  BlockSpectrum out;
  out.dim = n;
  const SparseOp& hr = h;
  for (auto& g : groups) {
    if (g.empty()) continue;
    const auto b = static_cast<Eigen::Index>(g.size());
    CMatrix hb = CMatrix::Zero(b, b);
    for (Eigen::Index c = 0; c < b; ++c)
      for (SparseOp::InnerIterator it(hr, g[static_cast<std::size_t>(c)]); it; ++it) {
        const auto pos = std::lower_bound(g.begin(), g.end(), it.row());
        hb(pos - g.begin(), c) = it.value();
      }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(hb);
    out.blocks.push_back({std::move(g), eig.eigenvalues(), eig.eigenvectors()});
  }
  return out;
}

Model build_model(const ModelSpec& spec) {
  spec.validate();
  Model m{FockSpace(spec.lattice), {}, {}, {}, {}, {}};
  m.H0 = free_hamiltonian(m.space);
  m.V = realize(spec.interaction, m.space);
  m.H = m.H0 + m.V * cplx(spec.coupling);
  m.H.prune(cplx{}, 0.0);
  const SparseOp diff = m.H - SparseOp(m.H.adjoint());
  if (max_abs(diff) > 1e-11) throw Error(ErrorCode::InvalidArgument, "H = H0 + V is not Hermitian");
  m.free_energies = Eigen::VectorXd::Zero(m.space.dim());
  for (Eigen::Index k = 0; k < m.H0.outerSize(); ++k)
    for (SparseOp::InnerIterator it(m.H0, k); it; ++it) m.free_energies(it.row()) = it.value().real();
  m.spectrum = block_spectrum(m.H);
  return m;
}

namespace {

// Block-diagonal operator sum_blocks V f(E) V^dag * g(free energies on the right).
template <typename F>
SparseOp block_operator(const Model& m, F&& entry) {
  std::vector<Triplet> trip;
  for (const auto& b : m.spectrum.blocks) {
    const auto n = static_cast<Eigen::Index>(b.indices.size());
    const CMatrix block = entry(b);
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r)
        if (block(r, c) != cplx{})
          trip.emplace_back(b.indices[static_cast<std::size_t>(r)], b.indices[static_cast<std::size_t>(c)], block(r, c));
  }
  SparseOp out(m.spectrum.dim, m.spectrum.dim);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

Eigen::VectorXd block_free_energies(const Model& m, const SpectralBlock& b) {
  Eigen::VectorXd e(static_cast<Eigen::Index>(b.indices.size()));
  for (std::size_t i = 0; i < b.indices.size(); ++i) e(static_cast<Eigen::Index>(i)) = m.free_energies(b.indices[i]);
  return e;
}

}  // namespace

SparseOp moller(const Model& model, double t) {
  const double hbar = model.space.lattice().hbar();
  return block_operator(model, [&](const SpectralBlock& b) {
    const Eigen::VectorXd e0 = block_free_energies(model, b);
    CVector fh(b.energies.size()), f0(e0.size());
    for (Eigen::Index i = 0; i < fh.size(); ++i) fh(i) = std::exp(kI * b.energies(i) * t / hbar);
    for (Eigen::Index i = 0; i < f0.size(); ++i) f0(i) = std::exp(-kI * e0(i) * t / hbar);
    return CMatrix(b.vectors * fh.asDiagonal() * b.vectors.adjoint() * f0.asDiagonal());
  });
}

SparseOp evolution(const Model& model, double t, double t0) {
  return SparseOp(SparseOp(moller(model, t).adjoint()) * moller(model, t0));
}

namespace {

cplx expm1c(cplx w) {
  if (std::abs(w) < 1e-3) return w * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0)));
  return std::exp(w) - 1.0;
}

}  // namespace

cplx simpson_exponential(double epsilon, double omega, const QuadratureSpec& q) {
  const double T = q.horizon_factor / epsilon;
  auto n = static_cast<long long>(std::ceil(T / q.step));
  if (n % 2) ++n;
  const double h = T / static_cast<double>(n);
  const cplx lz = cplx(-epsilon, omega) * h;  // log z
  const cplx z = std::exp(lz);
  // sum_{k=0}^{n} z^k and sum_{k odd < n} z^k
  const cplx all = expm1c(lz * static_cast<double>(n + 1)) / expm1c(lz);
  const cplx odd = z * expm1c(lz * static_cast<double>(n)) / expm1c(2.0 * lz);
  const cplx zn = std::exp(lz * static_cast<double>(n));
  return h / 3.0 * (2.0 * all + 2.0 * odd - 1.0 - zn);
}

cplx abel_weight(double epsilon, double omega, const QuadratureSpec& q) {
  return simpson_exponential(epsilon, omega, q) / simpson_exponential(epsilon, 0.0, q);
}

namespace {

// B(j, alpha) = <j|alpha> w(sign * (E_alpha - E_j)), so that Omega = V B on the block.
CMatrix weighted_overlap(const SpectralBlock& b, const Eigen::VectorXd& e0, double epsilon, double sign,
                         const QuadratureSpec& q, double hbar) {
  const auto n = static_cast<Eigen::Index>(b.indices.size());
  CMatrix out(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index j = 0; j < n; ++j)
      out(j, a) = std::conj(b.vectors(a, j)) * abel_weight(epsilon, sign * (e0(a) - b.energies(j)) / hbar, q);
  return out;
}

struct StageBlocks {
  std::vector<CMatrix> s;
  std::vector<CMatrix> b_in;
  std::vector<CMatrix> b_out;
};

StageBlocks stage_blocks(const Model& m, double epsilon, const QuadratureSpec& q) {
  StageBlocks out;
  const double hbar = m.space.lattice().hbar();
  for (const auto& b : m.spectrum.blocks) {
    const Eigen::VectorXd e0 = block_free_energies(m, b);
    CMatrix bin = weighted_overlap(b, e0, epsilon, +1.0, q, hbar);
    CMatrix bout = weighted_overlap(b, e0, epsilon, -1.0, q, hbar);
    out.s.push_back(bout.adjoint() * bin);
    out.b_in.push_back(std::move(bin));
    out.b_out.push_back(std::move(bout));
  }
  return out;
}

SparseOp assemble(const Model& m, const std::vector<CMatrix>& blocks) {
  std::vector<Triplet> trip;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& idx = m.spectrum.blocks[k].indices;
    for (Eigen::Index c = 0; c < blocks[k].cols(); ++c)
      for (Eigen::Index r = 0; r < blocks[k].rows(); ++r)
        if (blocks[k](r, c) != cplx{})
          trip.emplace_back(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)], blocks[k](r, c));
  }
  SparseOp out(m.spectrum.dim, m.spectrum.dim);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

}  // namespace

SMatrixResult s_matrix(const Model& model, const ModelSpec& spec) {
  spec.validate();
  const auto& blocks = model.spectrum.blocks;
  std::vector<StageBlocks> stages;
  for (double eps : spec.abel_epsilons) stages.push_back(stage_blocks(model, eps, spec.quadrature));

  // convergence flags from a pair of stages
  auto flags = [&](const StageBlocks& coarse, const StageBlocks& fine, std::vector<char>& col_ok, std::size_t& entries) {
    col_ok.assign(static_cast<std::size_t>(model.spectrum.dim), 1);
    entries = 0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      const CMatrix d = fine.s[k] - coarse.s[k];
      for (Eigen::Index c = 0; c < d.cols(); ++c) {
        const double ref = fine.s[k].col(c).norm();
        for (Eigen::Index r = 0; r < d.rows(); ++r)
          if (std::abs(d(r, c)) > spec.convergence_rel * ref) ++entries;
        if (d.col(c).norm() > spec.convergence_rel * ref) col_ok[static_cast<std::size_t>(blocks[k].indices[static_cast<std::size_t>(c)])] = 0;
      }
    }
  };

  SMatrixResult res;
  const std::size_t last = stages.size() - 1;
  std::vector<char> ok;
  flags(stages[last - 1], stages[last], ok, res.unconverged_entries);
  for (Eigen::Index i = 0; i < model.spectrum.dim; ++i)
    (ok[static_cast<std::size_t>(i)] ? res.converged : res.unconverged).push_back(i);
  if (stages.size() >= 3) {
    std::vector<char> prev;
    std::size_t unused = 0;
    flags(stages[last - 2], stages[last - 1], prev, unused);
    res.flags_stable = prev == ok;
  }

  const double hbar = model.space.lattice().hbar();
  std::vector<double> defects, intertwinings, commutators;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    EpsilonStage st;
    st.epsilon = spec.abel_epsilons[s];
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      const auto& b = blocks[k];
      const auto n = static_cast<Eigen::Index>(b.indices.size());
      const Eigen::VectorXd e0 = block_free_energies(model, b);
      const CMatrix& sb = stages[s].s[k];
      const CMatrix ssd = sb.adjoint() * sb - CMatrix::Identity(n, n);
      // H Omega_in - Omega_in H0 = V (E B - B E0)
      CMatrix inter = b.energies.asDiagonal() * stages[s].b_in[k] - stages[s].b_in[k] * e0.asDiagonal();
      for (Eigen::Index c = 0; c < n; ++c) {
        if (!ok[static_cast<std::size_t>(b.indices[static_cast<std::size_t>(c)])]) continue;
        st.intertwining = std::max(st.intertwining, inter.col(c).norm() / hbar);
        for (Eigen::Index r = 0; r < n; ++r) {
          if (!ok[static_cast<std::size_t>(b.indices[static_cast<std::size_t>(r)])]) continue;
          st.unitarity_defect = std::max(st.unitarity_defect, std::abs(ssd(r, c)));
          st.energy_commutator = std::max(st.energy_commutator, std::abs(sb(r, c) * (e0(c) - e0(r))));
        }
      }
    }
    st.S = assemble(model, stages[s].s);
    st.omega_in = assemble(model, [&] {
      std::vector<CMatrix> om;
      for (std::size_t k = 0; k < blocks.size(); ++k) om.push_back(blocks[k].vectors * stages[s].b_in[k]);
      return om;
    }());
    defects.push_back(st.unitarity_defect);
    intertwinings.push_back(st.intertwining);
    commutators.push_back(st.energy_commutator);
    res.stages.push_back(std::move(st));
  }
  res.S = res.stages.back().S;
  res.unitarity_defect = res.stages.back().unitarity_defect;
  res.defect_monotone = strictly_decreasing(defects);
  res.intertwining_monotone = strictly_decreasing(intertwinings);
  res.energy_commutator_monotone = strictly_decreasing(commutators);
  return res;
}

cplx s_element_by_states(const Model& model, double epsilon, const QuadratureSpec& q, Eigen::Index beta,
                         Eigen::Index alpha) {
  const double hbar = model.space.lattice().hbar();
  // Omega_in |alpha> and Omega_out |beta> as full vectors
  auto state = [&](Eigen::Index idx, double sign) {
    CVector v = CVector::Zero(model.spectrum.dim);
    for (const auto& b : model.spectrum.blocks) {
      const auto pos = std::find(b.indices.begin(), b.indices.end(), idx);
      if (pos == b.indices.end()) continue;
      const auto a = pos - b.indices.begin();
      const double e0 = model.free_energies(idx);
      for (Eigen::Index j = 0; j < b.energies.size(); ++j) {
        const cplx amp = std::conj(b.vectors(a, j)) * abel_weight(epsilon, sign * (e0 - b.energies(j)) / hbar, q);
        for (std::size_t r = 0; r < b.indices.size(); ++r)
          v(b.indices[r]) += b.vectors(static_cast<Eigen::Index>(r), j) * amp;
      }
    }
    return v;
  };
  return state(beta, -1.0).dot(state(alpha, +1.0));
}

SuperselectionReport superselection_report(const SparseOp& o, const FockSpace& space) {
  const auto mass = space.total_mass();
  SuperselectionReport rep;
  std::vector<double> distinct = mass;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 distinct.end());
  rep.sectors = distinct.size();
  for (Eigen::Index k = 0; k < o.outerSize(); ++k)
    for (SparseOp::InnerIterator it(o, k); it; ++it)
      if (std::abs(mass[static_cast<std::size_t>(it.row())] - mass[static_cast<std::size_t>(it.col())]) > 1e-12)
        rep.max_off_block = std::max(rep.max_off_block, std::abs(it.value()));
  rep.number_commutator = number_commutator(o, space).norm;
  return rep;
}

NormalizationReport asymptotic_normalization_check(const Model& model, const ModelSpec& spec,
                                                   const SMatrixResult& result, double tol) {
  const double eps = spec.abel_epsilons.back();
  const double hbar = model.space.lattice().hbar();
  std::vector<char> ok(static_cast<std::size_t>(model.spectrum.dim), 0);
  for (auto i : result.converged) ok[static_cast<std::size_t>(i)] = 1;
  NormalizationReport rep;
  for (const auto& b : model.spectrum.blocks) {
    const auto n = static_cast<Eigen::Index>(b.indices.size());
    const Eigen::VectorXd e0 = block_free_energies(model, b);
    const CMatrix bin = weighted_overlap(b, e0, eps, +1.0, spec.quadrature, hbar);
    const CMatrix bout = weighted_overlap(b, e0, eps, -1.0, spec.quadrature, hbar);
    const CMatrix gin = bin.adjoint() * bin - CMatrix::Identity(n, n);
    const CMatrix gout = bout.adjoint() * bout - CMatrix::Identity(n, n);
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r) {
        if (!ok[static_cast<std::size_t>(b.indices[static_cast<std::size_t>(r)])] ||
            !ok[static_cast<std::size_t>(b.indices[static_cast<std::size_t>(c)])])
          continue;
        rep.in_defect = std::max(rep.in_defect, std::abs(gin(r, c)));
        rep.out_defect = std::max(rep.out_defect, std::abs(gout(r, c)));
      }
    if (b.indices.front() == 0) rep.vacuum_overlap = std::abs(gin(0, 0) + 1.0);
  }
  rep.passed = rep.in_defect < tol && rep.out_defect < tol && std::abs(rep.vacuum_overlap - 1.0) < 1e-14;
  return rep;
}

}  // namespace gqft
