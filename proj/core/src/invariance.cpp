#include "gqft/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "gqft/error.hpp"
#include "gqft/spin.hpp"

namespace gqft {

void OperatorPolynomial::validate(const ModeLattice& lattice) const {
  const int h = lattice.half_width();
  auto check = [&](const Leg& l) {
    if (l.species < 0 || static_cast<std::size_t>(l.species) >= lattice.species().size())
      throw Error(ErrorCode::InvalidArgument, "leg species out of range");
    const SpinLabel s = lattice.species(l.species).spin;
    if (std::abs(l.two_lambda) > s.two_s || (l.two_lambda + s.two_s) % 2 != 0)
      throw Error(ErrorCode::InvalidArgument, "leg spin projection outside representation");
    for (int c : l.j)
      if (c < -h || c > h) throw Error(ErrorCode::InvalidArgument, "leg grid point outside [-h, h]^3");
  };
  for (const auto& m : monomials) {
    if (!std::isfinite(m.coefficient.real()) || !std::isfinite(m.coefficient.imag()))
      throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
    for (const auto& l : m.creation) check(l);
    for (const auto& l : m.annihilation) check(l);
  }
  if (hermitian && hermiticity_defect(*this, lattice) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "polynomial flagged Hermitian violates C_NM = C*_MN");
}

OperatorPolynomial OperatorPolynomial::adjoint() const {
  OperatorPolynomial out;
  out.hermitian = hermitian;
  for (const auto& m : monomials) {
    Monomial a;
    a.creation.assign(m.annihilation.rbegin(), m.annihilation.rend());
    a.annihilation.assign(m.creation.rbegin(), m.creation.rend());
    a.coefficient = std::conj(m.coefficient);
    out.monomials.push_back(std::move(a));
  }
  return out;
}

bool OperatorPolynomial::may_truncate() const {
  for (const auto& m : monomials)
    if (m.creation.size() > m.annihilation.size()) return true;
  return false;
}

namespace {

// Sorts legs in place, returning the sign picked up by exchanging fermionic legs.
double sort_legs(std::vector<Leg>& legs, const ModeLattice& lat) {
  double sign = 1.0;
  for (std::size_t i = 1; i < legs.size(); ++i)
    for (std::size_t k = i; k > 0 && legs[k] < legs[k - 1]; --k) {
      if (lat.species(legs[k].species).statistics == Statistics::Fermi &&
          lat.species(legs[k - 1].species).statistics == Statistics::Fermi)
        sign = -sign;
      std::swap(legs[k], legs[k - 1]);
    }
  return sign;
}

double coefficient_distance(const std::map<MonomialKey, cplx>& a, const std::map<MonomialKey, cplx>& b) {
  double d = 0.0;
  for (const auto& [k, v] : a) {
    const auto it = b.find(k);
    d = std::max(d, std::abs(v - (it == b.end() ? cplx{} : it->second)));
  }
  for (const auto& [k, v] : b)
    if (a.find(k) == a.end()) d = std::max(d, std::abs(v));
  return d;
}

}  // namespace

std::map<MonomialKey, cplx> canonical_coefficients(const OperatorPolynomial& p, const ModeLattice& lattice) {
  std::map<MonomialKey, cplx> out;
  for (const auto& m : p.monomials) {
    MonomialKey key{m.creation, m.annihilation};
    const double sign = sort_legs(key.first, lattice) * sort_legs(key.second, lattice);
    out[key] += sign * m.coefficient;
  }
  for (auto it = out.begin(); it != out.end();) it = std::abs(it->second) == 0.0 ? out.erase(it) : std::next(it);
  return out;
}

double hermiticity_defect(const OperatorPolynomial& p, const ModeLattice& lattice) {
  return coefficient_distance(canonical_coefficients(p, lattice), canonical_coefficients(p.adjoint(), lattice));
}

SparseOp realize(const OperatorPolynomial& p, const FockSpace& space) {
  p.validate(space.lattice());
  std::map<Leg, SparseOp> minus, plus;
  auto field = [&](const Leg& l, bool creation) -> const SparseOp& {
    auto& cache = creation ? plus : minus;
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    SparseOp f = annihilation_field(space, l.species, l.two_lambda, {l.j, 0.0});
    if (creation) f = SparseOp(f.adjoint());
    return cache.emplace(l, std::move(f)).first->second;
  };

  // Monomials as leg sequences sorted lexicographically, so that a shared prefix is
  // multiplied once: sum_k F_1 ... F_n c_k = F_1 (sum over the rest).
  using Factor = std::pair<bool, Leg>;  // (is annihilation, leg)
  struct Seq {
    std::vector<Factor> factors;
    cplx coefficient;
  };
  std::vector<Seq> seqs;
  for (const auto& m : p.monomials) {
    if (m.coefficient == cplx{}) continue;
    Seq s{{}, m.coefficient};
    for (const auto& l : m.creation) s.factors.push_back({false, l});
    for (const auto& l : m.annihilation) s.factors.push_back({true, l});
    seqs.push_back(std::move(s));
  }
  std::sort(seqs.begin(), seqs.end(), [](const Seq& x, const Seq& y) { return x.factors < y.factors; });

  const Eigen::Index dim = space.dim();
  std::function<SparseOp(std::size_t, std::size_t, std::size_t)> suffix_sum = [&](std::size_t lo, std::size_t hi,
                                                                                  std::size_t depth) {
    SparseOp out(dim, dim);
    cplx scalar{};
    std::size_t i = lo;
    while (i < hi) {
      if (seqs[i].factors.size() == depth) {
        scalar += seqs[i].coefficient;
        ++i;
        continue;
      }
      const Factor& f = seqs[i].factors[depth];
      std::size_t k = i + 1;
      while (k < hi && seqs[k].factors.size() > depth && seqs[k].factors[depth] == f) ++k;
      out += SparseOp(field(f.second, !f.first) * suffix_sum(i, k, depth + 1));
      i = k;
    }
    if (scalar != cplx{}) out += sparse_identity(dim) * scalar;
    return out;
  };
  SparseOp out = seqs.empty() ? SparseOp(dim, dim) : suffix_sum(0, seqs.size(), 0);
  out.prune(cplx{}, 0.0);
  return out;
}

SparseOp conjugate(const SparseOp& u, const SparseOp& o) { return SparseOp(u * o * SparseOp(u.adjoint())); }

SparseOp conjugate(const GridCompatibleElement& g, const FockSpace& space, const SparseOp& o) {
  return conjugate(galilei_unitary(g, space), o);
}

namespace {

// Best rational approximation p/q with q <= max_q.
std::pair<long long, long long> rational(double x, long long max_q) {
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    const long long ai = static_cast<long long>(a);
    const long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_q) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) < 1e-12 * std::max(1.0, std::abs(x))) break;
    const double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return {p1, q1};
}

}  // namespace

double minimal_boost_speed(const ModeLattice& lattice) {
  long long num_gcd = 0, den_lcm = 1;
  for (const auto& s : lattice.species()) {
    const auto [p, q] = rational(std::abs(s.mass), 1000);
    if (q == 0 || std::abs(std::abs(s.mass) - static_cast<double>(p) / static_cast<double>(q)) > 1e-9 * std::abs(s.mass))
      throw Error(ErrorCode::NotGridCompatible, "species masses are not commensurate");
    num_gcd = std::gcd(num_gcd, p);
    den_lcm = std::lcm(den_lcm, q);
  }
  return lattice.momentum_quantum() * static_cast<double>(den_lcm) / static_cast<double>(num_gcd);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Invariant: return "invariant";
    case Verdict::NonInvariant: return "non-invariant";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<GroupSample> sample_elements(const ModeLattice& lattice, unsigned long long seed, int random_words,
                                         bool kinematic_only) {
  std::vector<GroupSample> gens;
  const auto rots = octahedral_rotations();
  for (std::size_t i = 0; i < rots.size(); ++i) {
    GalileiElement g;
    g.R = rots[i];
    gens.push_back({"rot[" + std::to_string(i) + "]", {g}, true, false});
  }
  const char* axis[3] = {"x", "y", "z"};
  for (int i = 0; i < 3; ++i) {
    GalileiElement g;
    g.a = lattice.grid_spacing() * Vec3::Unit(i);
    gens.push_back({std::string("shift-") + axis[i], {g}, true, false});
  }
  const double c = minimal_boost_speed(lattice);
  for (int i = 0; i < 3; ++i) {
    GalileiElement g;
    g.v = c * Vec3::Unit(i);
    gens.push_back({std::string("boost-") + axis[i], {g}, true, true});
  }
  if (!kinematic_only) {
    GalileiElement g;
    g.b = 0.5;
    gens.push_back({"time", {g}, false, false});
  }
  std::vector<GroupSample> out = gens;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(1, gens.size() - 1);  // skip the identity rotation
  std::uniform_int_distribution<int> len(2, 4);
  for (int w = 0; w < random_words; ++w) {
    GroupSample s{"", {}, true, false};
    const int n = len(rng);
    for (int k = 0; k < n; ++k) {
      const GroupSample& letter = gens[pick(rng)];
      s.label += (k ? "*" : "") + letter.label;
      s.word.push_back(letter.word.front());
      s.kinematic = s.kinematic && letter.kinematic;
      s.boost = s.boost || letter.boost;
    }
    s.label = "word[" + std::to_string(w) + "]:" + s.label;
    out.push_back(std::move(s));
  }
  return out;
}

SparseOp sample_unitary(const GroupSample& s, const FockSpace& space) {
  SparseOp u = sparse_identity(space.dim());
  for (const auto& g : s.word) u = SparseOp(u * galilei_unitary(make_grid_compatible(g, space.lattice()), space));
  return u;
}

GalileiElement compose_word(const std::vector<GalileiElement>& word) {
  GalileiElement g;
  for (const auto& w : word) g = compose(g, w);
  return g;
}

InvarianceReport check_invariance(const std::string& name, const SparseOp& o, const FockSpace& space,
                                  const std::vector<GroupSample>& samples, double pass_tol, double fail_fraction) {
  InvarianceReport rep;
  rep.name = name;
  rep.op_norm = frobenius(o);
  rep.pass_tol = pass_tol;
  rep.fail_floor = fail_fraction * rep.op_norm;
  if (!(rep.pass_tol < rep.fail_floor))
    throw Error(ErrorCode::InvalidArgument, "verdict gap is empty: pass_tol must lie below fail_floor");
  for (const auto& s : samples) {
    const double r = frobenius(SparseOp(conjugate(sample_unitary(s, space), o) - o));
    rep.residuals.push_back({s.label, r});
    rep.max_residual = std::max(rep.max_residual, r);
  }
  if (rep.max_residual < rep.pass_tol)
    rep.verdict = Verdict::Invariant;
  else if (rep.max_residual > rep.fail_floor)
    rep.verdict = Verdict::NonInvariant;
  else
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

namespace {

std::vector<IntVec3> grid_points(const ModeLattice& lat) {
  std::vector<IntVec3> out;
  const int h = lat.half_width();
  for (int a = -h; a <= h; ++a)
    for (int b = -h; b <= h; ++b)
      for (int c = -h; c <= h; ++c) out.push_back({a, b, c});
  return out;
}

std::vector<int> projections(const ModeLattice& lat, int species) {
  const SpinLabel s = lat.species(species).spin;
  std::vector<int> out;
  for (int i = 0; i < s.dim(); ++i) out.push_back(s.two_lambda(i));
  return out;
}

double min_image_distance(const ModeLattice& lat, const IntVec3& a, const IntVec3& b) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double d = lat.grid_spacing() * lat.wrap(a[i] - b[i]);
    d2 += d * d;
  }
  return std::sqrt(d2);
}

}  // namespace

OperatorPolynomial density_polynomial(const ModeLattice& lattice, int species) {
  OperatorPolynomial p;
  p.hermitian = true;
  for (const auto& j : grid_points(lattice))
    for (int l : projections(lattice, species)) p.monomials.push_back({{{species, l, j}}, {{species, l, j}}, 1.0});
  return p;
}

OperatorPolynomial two_body_polynomial(const ModeLattice& lattice, int species, double strength, double range) {
  OperatorPolynomial p;
  p.hermitian = true;
  const auto pts = grid_points(lattice);
  const auto ls = projections(lattice, species);
  for (const auto& x : pts)
    for (const auto& y : pts) {
      const double r = min_image_distance(lattice, x, y);
      const double v = 0.5 * strength * std::exp(-r * r / (range * range));
      for (int l1 : ls)
        for (int l2 : ls)
          p.monomials.push_back({{{species, l1, x}, {species, l2, y}}, {{species, l2, y}, {species, l1, x}}, v});
    }
  return p;
}

OperatorPolynomial lone_creation_polynomial(const ModeLattice& lattice, int species, int two_lambda) {
  OperatorPolynomial p;
  for (const auto& j : grid_points(lattice)) p.monomials.push_back({{{species, two_lambda, j}}, {}, 1.0});
  return p;
}

OperatorPolynomial displaced_pair_polynomial(const ModeLattice& lattice, int species, int two_lambda,
                                             const IntVec3& d) {
  OperatorPolynomial p;
  for (const auto& j : grid_points(lattice)) {
    const IntVec3 y = lattice.wrap(IntVec3{j[0] + d[0], j[1] + d[1], j[2] + d[2]});
    p.monomials.push_back({{{species, two_lambda, j}}, {{species, two_lambda, y}}, 1.0});
  }
  return p;
}

OperatorPolynomial production_polynomial(const ModeLattice& lattice, int v, int n, int theta, double coupling) {
  OperatorPolynomial p;
  p.hermitian = true;
  const int lv = lattice.species(v).spin.two_lambda(0);
  const int ln = lattice.species(n).spin.two_lambda(0);
  const int lt = lattice.species(theta).spin.two_lambda(0);
  for (const auto& j : grid_points(lattice)) {
    p.monomials.push_back({{{v, lv, j}}, {{n, ln, j}, {theta, lt, j}}, coupling});
    p.monomials.push_back({{{theta, lt, j}, {n, ln, j}}, {{v, lv, j}}, coupling});
  }
  return p;
}

std::vector<InvarianceReport> check_pairwise_theorem(const FockSpace& space, const std::vector<GroupSample>& samples,
                                                     double pass_tol, double fail_fraction) {
  const ModeLattice& lat = space.lattice();
  if (lat.species().size() != 1)
    throw Error(ErrorCode::InvalidArgument, "pairwise theorem check expects a single species");
  std::vector<GroupSample> kinematic;
  for (const auto& s : samples)
    if (s.kinematic) kinematic.push_back(s);
  const int l0 = lat.species(0).spin.two_lambda(0);
  std::vector<InvarianceReport> out;
  out.push_back(
      check_invariance("density", realize(density_polynomial(lat, 0), space), space, samples, pass_tol, fail_fraction));
  out.push_back(check_invariance("two-body", realize(two_body_polynomial(lat, 0, 1.0, lat.grid_spacing()), space),
                                 space, kinematic, pass_tol, fail_fraction));
  out.push_back(
      check_invariance("lone-creation", realize(lone_creation_polynomial(lat, 0, l0), space), space, samples, pass_tol,
                       fail_fraction));
  out.push_back(check_invariance("displaced-pair", realize(displaced_pair_polynomial(lat, 0, l0, {1, 0, 0}), space),
                                 space, samples, pass_tol, fail_fraction));
  return out;
}

InvarianceReport check_mass_sum_rule(const FockSpace& space, const std::vector<GroupSample>& samples,
                                     const std::string& v, const std::string& n, const std::string& theta,
                                     double pass_tol, double fail_fraction) {
  const ModeLattice& lat = space.lattice();
  const auto poly = production_polynomial(lat, lat.species_index(v), lat.species_index(n), lat.species_index(theta), 1.0);
  std::vector<GroupSample> kinematic;
  for (const auto& s : samples)
    if (s.kinematic) kinematic.push_back(s);
  return check_invariance("production " + v + "<->" + n + "+" + theta, realize(poly, space), space, kinematic,
                          pass_tol, fail_fraction);
}

namespace {

CommutatorNorm diag_commutator(const SparseOp& o, const std::vector<double>& d) {
  SparseOp c = o;
  for (Eigen::Index k = 0; k < c.outerSize(); ++k)
    for (SparseOp::InnerIterator it(c, k); it; ++it)
      it.valueRef() *= d[static_cast<std::size_t>(it.col())] - d[static_cast<std::size_t>(it.row())];
  c.prune(cplx{}, 0.0);
  return {c, frobenius(c)};
}

}  // namespace

CommutatorNorm number_commutator(const SparseOp& o, const FockSpace& space) {
  const auto q = space.quanta();
  return diag_commutator(o, std::vector<double>(q.begin(), q.end()));
}

CommutatorNorm mass_commutator(const SparseOp& o, const FockSpace& space) {
  return diag_commutator(o, space.total_mass());
}

OperatorPolynomial transform_polynomial(const OperatorPolynomial& p, const Rotation& R, const ModeLattice& lattice) {
  GalileiElement g;
  g.R = R;
  const Eigen::Matrix3i rot = make_grid_compatible(g, lattice).rotation;
  auto move = [&](const IntVec3& j) {
    IntVec3 out{};
    for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = rot(i, 0) * j[0] + rot(i, 1) * j[1] + rot(i, 2) * j[2];
    return lattice.wrap(out);
  };
  std::vector<CMatrix> dinv;
  for (const auto& s : lattice.species()) dinv.push_back(wigner_d(s.spin, R.inverse()).m);

  OperatorPolynomial out;
  out.hermitian = p.hermitian;
  for (const auto& m : p.monomials) {
    // expand every leg into its rotated spin components
    std::vector<Monomial> partial{{{}, {}, m.coefficient}};
    auto expand = [&](const Leg& l, bool creation) {
      const auto sp = static_cast<std::size_t>(l.species);
      const SpinLabel s = lattice.species(l.species).spin;
      const int row = s.index_of(l.two_lambda);
      std::vector<Monomial> next;
      for (const auto& pm : partial)
        for (int i = 0; i < s.dim(); ++i) {
          const cplx d = creation ? std::conj(dinv[sp](row, i)) : dinv[sp](row, i);
          if (std::abs(d) < 1e-15) continue;
          Monomial nm = pm;
          (creation ? nm.creation : nm.annihilation).push_back({l.species, s.two_lambda(i), move(l.j)});
          nm.coefficient *= d;
          next.push_back(std::move(nm));
        }
      partial = std::move(next);
    };
    for (const auto& l : m.creation) expand(l, true);
    for (const auto& l : m.annihilation) expand(l, false);
    for (auto& pm : partial) out.monomials.push_back(std::move(pm));
  }
  return out;
}

CheckReport coefficient_covariance_check(const OperatorPolynomial& p, const Rotation& R, const ModeLattice& lattice,
                                         double tol) {
  CheckReport rep;
  rep.tolerance = tol;
  rep.add("max |C'(key) - C(key)|",
          coefficient_distance(canonical_coefficients(transform_polynomial(p, R, lattice), lattice),
                               canonical_coefficients(p, lattice)));
  return rep.finalize_below();
}

}  // namespace gqft
