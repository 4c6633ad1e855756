#include "gqft/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gqft/error.hpp"

namespace gqft {
namespace {

SparseOp kron(const SparseOp& a, const SparseOp& b) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Eigen::Index ka = 0; ka < a.outerSize(); ++ka)
    for (SparseOp::InnerIterator ia(a, ka); ia; ++ia)
      for (Eigen::Index kb = 0; kb < b.outerSize(); ++kb)
        for (SparseOp::InnerIterator ib(b, kb); ib; ++ib)
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                         ia.value() * ib.value());
  SparseOp out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SparseOp to_sparse(const CMatrix& m) {
  SparseOp s = m.sparseView();
  s.makeCompressed();
  return s;
}

// Operator `single` on axis `axis` of the three oscillator factors, identity elsewhere.
SparseOp on_axis(const SparseOp& single, int axis, int n, int spin_dim) {
  const SparseOp id_n = sparse_identity(n);
  SparseOp out = axis == 0 ? single : id_n;
  for (int ax = 1; ax < 3; ++ax) out = kron(out, ax == axis ? single : id_n);
  return kron(out, sparse_identity(spin_dim));
}

constexpr int kEps[3][3][3] = {
    {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
    {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
    {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}},
};

}  // namespace

void AlgebraConfig::validate() const {
  if (!(m > 0.0)) throw Error(ErrorCode::ConfigInvalid, "algebra mass must be positive");
  if (n_levels < 8) throw Error(ErrorCode::ConfigInvalid, "n_levels must be >= 8");
  if (!(interior_fraction > 0.0 && interior_fraction < 1.0))
    throw Error(ErrorCode::ConfigInvalid, "interior_fraction must lie in (0, 1)");
  if (!(hbar > 0.0)) throw Error(ErrorCode::ConfigInvalid, "hbar must be positive");
  if (s.two_s < 0) throw Error(ErrorCode::ConfigInvalid, "negative spin");
}

GeneratorSet build_generators(const AlgebraConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_levels;
  const int sd = cfg.s.dim();

  CMatrix lower = CMatrix::Zero(n, n);  // annihilation ladder
  for (int k = 1; k < n; ++k) lower(k - 1, k) = std::sqrt(static_cast<double>(k));
  const CMatrix raise = lower.adjoint();
  const SparseOp x1 = to_sparse((lower + raise) / std::sqrt(2.0));
  const SparseOp p1 = to_sparse(kI * cfg.hbar * (raise - lower) / std::sqrt(2.0));

  GeneratorSet g;
  g.cfg = cfg;
  const auto spin = spin_matrices(cfg.s, cfg.hbar);
  SparseOp id_osc = sparse_identity(static_cast<Eigen::Index>(n) * n * n);
  for (int i = 0; i < 3; ++i) {
    g.X[i] = on_axis(x1, i, n, sd);
    g.P[i] = on_axis(p1, i, n, sd);
    g.K[i] = cfg.m * g.X[i];
    g.S[i] = kron(id_osc, to_sparse(spin[i]));
  }
  const Eigen::Index dim = g.X[0].rows();
  SparseOp p2(dim, dim);
  for (int i = 0; i < 3; ++i) p2 += g.P[i] * g.P[i];
  g.H = p2 / (2.0 * cfg.m) + cfg.W * sparse_identity(dim);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    g.J[i] = SparseOp(g.X[j] * g.P[k] - g.X[k] * g.P[j]) + g.S[i];
  }
  g.M = cfg.m * sparse_identity(dim);
  return g;
}

std::vector<Eigen::Index> GeneratorSet::interior_indices() const {
  const int n = cfg.n_levels;
  const int sd = cfg.s.dim();
  const int cut = static_cast<int>(std::floor(cfg.interior_fraction * n));
  std::vector<Eigen::Index> out;
  for (int l1 = 0; l1 < cut; ++l1)
    for (int l2 = 0; l2 < cut; ++l2)
      for (int l3 = 0; l3 < cut; ++l3)
        for (int s = 0; s < sd; ++s)
          out.push_back(((static_cast<Eigen::Index>(l1) * n + l2) * n + l3) * sd + s);
  return out;
}

std::vector<std::pair<std::string, const SparseOp*>> GeneratorSet::named() const {
  return {{"H", &H},     {"P1", &P[0]}, {"P2", &P[1]}, {"P3", &P[2]}, {"K1", &K[0]}, {"K2", &K[1]},
          {"K3", &K[2]}, {"J1", &J[0]}, {"J2", &J[1]}, {"J3", &J[2]}, {"M", &M}};
}

double interior_residual(const GeneratorSet& g, const SparseOp& residual) {
  std::vector<char> mask(static_cast<std::size_t>(g.dim()), 0);
  const auto interior = g.interior_indices();
  if (interior.empty()) throw Error(ErrorCode::TruncationTooSmall, "interior subspace is empty");
  for (auto i : interior) mask[static_cast<std::size_t>(i)] = 1;
  double m = 0.0;
  for (Eigen::Index k = 0; k < residual.outerSize(); ++k) {
    if (!mask[static_cast<std::size_t>(k)]) continue;
    for (SparseOp::InnerIterator it(residual, k); it; ++it)
      if (mask[static_cast<std::size_t>(it.row())]) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

namespace {

// Product coherent state (alpha = 1 on every axis) times a uniform spin vector.
CVector probe_state(const GeneratorSet& g) {
  const int n = g.cfg.n_levels;
  const int sd = g.cfg.s.dim();
  Eigen::VectorXd c(n);
  double fact = 1.0;
  for (int k = 0; k < n; ++k) {
    if (k > 0) fact *= k;
    c(k) = std::exp(-0.5) / std::sqrt(fact);
  }
  c /= c.norm();
  CVector phi(g.dim());
  for (int l1 = 0; l1 < n; ++l1)
    for (int l2 = 0; l2 < n; ++l2)
      for (int l3 = 0; l3 < n; ++l3)
        for (int s = 0; s < sd; ++s)
          phi(((static_cast<Eigen::Index>(l1) * n + l2) * n + l3) * sd + s) =
              c(l1) * c(l2) * c(l3) / std::sqrt(static_cast<double>(sd));
  return phi;
}

struct BracketSpec {
  std::string name;
  std::string family;
  const SparseOp* a;
  const SparseOp* b;
  SparseOp expected;
};

BracketReport evaluate(const GeneratorSet& g, const std::vector<BracketSpec>& specs, double tol) {
  if (g.interior_indices().empty())
    throw Error(ErrorCode::TruncationTooSmall, "interior subspace is empty");
  const CVector phi = probe_state(g);
  BracketReport rep;
  rep.tolerance = tol;
  for (const auto& s : specs) {
    SparseOp res = graded_commutator(*s.a, *s.b, +1);
    if (s.expected.nonZeros() > 0) res -= s.expected;
    BracketResidual r{s.name, s.family, interior_residual(g, res), (res * phi).norm()};
    rep.residuals.push_back(std::move(r));
  }
  rep.passed = rep.max_interior() < tol;
  return rep;
}

}  // namespace

double BracketReport::max_interior() const {
  double m = 0.0;
  for (const auto& r : residuals) m = std::max(m, r.interior);
  return m;
}

double BracketReport::max_probe() const {
  double m = 0.0;
  for (const auto& r : residuals) m = std::max(m, r.probe);
  return m;
}

std::vector<std::pair<std::string, double>> BracketReport::by_family() const {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& r : residuals) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == r.family; });
    if (it == out.end())
      out.emplace_back(r.family, r.interior);
    else
      it->second = std::max(it->second, r.interior);
  }
  return out;
}

BracketReport check_brackets(const GeneratorSet& g, double tol) {
  const double hb = g.cfg.hbar;
  const Eigen::Index dim = g.dim();
  const SparseOp zero(dim, dim);
  const char* axis = "123";
  auto nm = [&](const char* a, int i, const char* b, int j) {
    return std::string("[") + a + axis[i] + "," + b + (j >= 0 ? std::string(1, axis[j]) : "") + "]";
  };
  auto rot = [&](const std::array<SparseOp, 3>& v, int i, int j) {
    SparseOp e(dim, dim);
    for (int k = 0; k < 3; ++k)
      if (kEps[i][j][k] != 0) e += (kI * hb * static_cast<double>(kEps[i][j][k])) * v[k];
    return e;
  };

  std::vector<BracketSpec> specs;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i < j) specs.push_back({nm("J", i, "J", j), "[J_i,J_j]", &g.J[i], &g.J[j], rot(g.J, i, j)});
      specs.push_back({nm("J", i, "K", j), "[J_i,K_j]", &g.J[i], &g.K[j], rot(g.K, i, j)});
      specs.push_back({nm("J", i, "P", j), "[J_i,P_j]", &g.J[i], &g.P[j], rot(g.P, i, j)});
      specs.push_back({nm("K", i, "P", j), "[K_i,P_j]", &g.K[i], &g.P[j],
                       i == j ? SparseOp(kI * hb * g.cfg.m * sparse_identity(dim)) : zero});
      if (i < j) {
        specs.push_back({nm("K", i, "K", j), "[K_i,K_j]", &g.K[i], &g.K[j], zero});
        specs.push_back({nm("P", i, "P", j), "[P_i,P_j]", &g.P[i], &g.P[j], zero});
      }
    }
  for (int i = 0; i < 3; ++i) {
    specs.push_back({nm("K", i, "H", -1), "[K_i,H]", &g.K[i], &g.H, SparseOp(kI * hb * g.P[i])});
    specs.push_back({nm("J", i, "H", -1), "[J_i,H]", &g.J[i], &g.H, zero});
    specs.push_back({nm("P", i, "H", -1), "[P_i,H]", &g.P[i], &g.H, zero});
  }
  for (const auto& [name, op] : g.named())
    if (op != &g.M) specs.push_back({"[M," + name + "]", "[M,G]", &g.M, op, zero});
  return evaluate(g, specs, tol);
}

Casimirs casimirs(const GeneratorSet& g) {
  const Eigen::Index dim = g.dim();
  Casimirs c;
  c.Q1 = g.M;
  SparseOp p2(dim, dim);
  for (int i = 0; i < 3; ++i) p2 += g.P[i] * g.P[i];
  c.Q2 = SparseOp(2.0 * (g.M * g.H)) - p2;
  c.Q3 = SparseOp(dim, dim);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    SparseOp kxp = SparseOp(g.K[j] * g.P[k]) - SparseOp(g.K[k] * g.P[j]);
    SparseOp l = SparseOp(g.M * g.J[i]) - kxp;
    c.Q3 += l * l;
  }
  return c;
}

BracketReport check_centrality(const GeneratorSet& g, double tol) {
  const Casimirs c = casimirs(g);
  const Eigen::Index dim = g.dim();
  const SparseOp zero(dim, dim);
  const std::array<std::pair<std::string, const SparseOp*>, 3> qs{
      {{"Q1", &c.Q1}, {"Q2", &c.Q2}, {"Q3", &c.Q3}}};
  std::vector<BracketSpec> specs;
  for (const auto& [qn, q] : qs)
    for (const auto& [gn, op] : g.named())
      specs.push_back({"[" + qn + "," + gn + "]", "[" + qn + ",G]", q, op, zero});
  return evaluate(g, specs, tol);
}

double jacobi_residual(const GeneratorSet& g, int triples, unsigned long long seed) {
  const auto gens = g.named();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  double worst = 0.0;
  for (int t = 0; t < triples; ++t) {
    const SparseOp& a = *gens[pick(rng)].second;
    const SparseOp& b = *gens[pick(rng)].second;
    const SparseOp& c = *gens[pick(rng)].second;
    SparseOp j = graded_commutator(a, graded_commutator(b, c, 1), 1);
    j += graded_commutator(b, graded_commutator(c, a, 1), 1);
    j += graded_commutator(c, graded_commutator(a, b, 1), 1);
    worst = std::max(worst, interior_residual(g, j));
  }
  return worst;
}

}  // namespace gqft
