#include "gqft/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gqft/error.hpp"
#include "gqft/spin.hpp"

namespace gqft {

const char* to_string(FieldVariant v) {
  switch (v) {
    case FieldVariant::Annihilation: return "annihilation";
    case FieldVariant::Creation: return "creation";
    case FieldVariant::AntiparticleCreation: return "antiparticle-creation";
    case FieldVariant::General: return "general";
  }
  return "?";
}

int antiparticle_partner(const ModeLattice& lattice, int species) {
  const auto& name = lattice.species(species).name;
  const auto& all = lattice.species();
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].antiparticle_of && *all[i].antiparticle_of == name) return static_cast<int>(i);
  return -1;
}

namespace {

bool needs_partner(const Species& s, FieldVariant v) {
  return v == FieldVariant::AntiparticleCreation || (v == FieldVariant::General && s.eta != cplx{});
}

bool in_grid(const ModeLattice& lat, const IntVec3& j) {
  const int h = lat.half_width();
  for (int c : j)
    if (c < -h || c > h) return false;
  return true;
}

// L^{-3/2} exp(+i(E t - p.x)/hbar) for every momentum of one species/spin component.
std::vector<std::pair<std::size_t, cplx>> plane_wave_terms(const ModeLattice& lat, int species, int two_lambda,
                                                           const GridPoint& x, const CVector* spin_weights) {
  const double norm = std::pow(lat.box_length(), -1.5);
  const Vec3 pos = lat.position(x.j);
  const Species& sp = lat.species(species);
  std::vector<std::pair<std::size_t, cplx>> terms;
  for (std::size_t pk = 0; pk < lat.momentum_count(); ++pk) {
    const IntVec3 k = lat.momentum_label(pk);
    const double phase = (lat.energy({species, k, 0}) * x.t - lat.momentum(k).dot(pos)) / lat.hbar();
    const cplx w = norm * std::exp(kI * phase);
    if (spin_weights == nullptr) {
      terms.emplace_back(lat.mode_index({species, k, two_lambda}), w);
    } else {
      for (int i = 0; i < sp.spin.dim(); ++i)
        if ((*spin_weights)(i) != cplx{})
          terms.emplace_back(lat.mode_index({species, k, sp.spin.two_lambda(i)}), w * (*spin_weights)(i));
    }
  }
  return terms;
}

}  // namespace

void require_partner(const ModeLattice& lattice, int species, FieldVariant variant) {
  const Species& s = lattice.species(species);
  if (!needs_partner(s, variant)) return;
  const int p = antiparticle_partner(lattice, species);
  if (p < 0) throw Error(ErrorCode::MissingAntiparticle, "species '" + s.name + "' has no antiparticle configured");
  const Species& ps = lattice.species(p);
  if (std::abs(ps.mass + s.mass) > 1e-12 * std::abs(s.mass))
    throw Error(ErrorCode::PartnerMassMismatch,
                "antiparticle '" + ps.name + "' must carry mass " + std::to_string(-s.mass));
  if (ps.spin != s.spin || ps.statistics != s.statistics)
    throw Error(ErrorCode::ConfigInvalid, "antiparticle '" + ps.name + "' must share spin and statistics");
}

SparseOp realize_field(const FockSpace& space, const FieldSpec& f) {
  const ModeLattice& lat = space.lattice();
  const Species& s = lat.species(f.species);
  if (std::abs(f.two_lambda) > s.spin.two_s || (f.two_lambda + s.spin.two_s) % 2 != 0)
    throw Error(ErrorCode::InvalidArgument, "spin projection outside representation");
  if (!in_grid(lat, f.x.j)) throw Error(ErrorCode::InvalidArgument, "grid point outside [-h, h]^3");
  require_partner(lat, f.species, f.variant);

  auto psi_minus = [&] {
    return space.annihilator_combination(plane_wave_terms(lat, f.species, f.two_lambda, f.x, nullptr));
  };
  auto anti_creation = [&] {
    // psi^{-c dagger}_lambda = (sum_mu conj(Cinv_{lambda mu}) psi^-_{partner, mu})^dagger
    const int p = antiparticle_partner(lat, f.species);
    const CMatrix cinv = conjugation_matrix(s.spin).adjoint();
    const CVector w = cinv.row(s.spin.index_of(f.two_lambda)).conjugate().transpose();
    return SparseOp(space.annihilator_combination(plane_wave_terms(lat, p, 0, f.x, &w)).adjoint());
  };

  switch (f.variant) {
    case FieldVariant::Annihilation: return psi_minus();
    case FieldVariant::Creation: return SparseOp(psi_minus().adjoint());
    case FieldVariant::AntiparticleCreation: return anti_creation();
    case FieldVariant::General: {
      SparseOp out = psi_minus() * s.xi;
      if (s.eta != cplx{}) out += anti_creation() * s.eta;
      return out;
    }
  }
  return {};
}

SparseOp annihilation_field(const FockSpace& space, int species, int two_lambda, const GridPoint& x) {
  return realize_field(space, {species, two_lambda, FieldVariant::Annihilation, x});
}

SparseOp general_field(const FockSpace& space, int species, int two_lambda, const GridPoint& x) {
  return realize_field(space, {species, two_lambda, FieldVariant::General, x});
}

SparseOp free_hamiltonian(const FockSpace& space) {
  const ModeLattice& lat = space.lattice();
  std::vector<double> e(lat.mode_count());
  for (std::size_t q = 0; q < e.size(); ++q) e[q] = lat.energy(lat.mode(q));
  std::vector<Triplet> t;
  for (Eigen::Index j = 0; j < space.dim(); ++j) {
    double sum = 0.0;
    for (auto q : space.state(j)) sum += e[q];
    if (sum != 0.0) t.emplace_back(j, j, sum);
  }
  SparseOp h(space.dim(), space.dim());
  h.setFromTriplets(t.begin(), t.end());
  return h;
}

std::vector<Rotation> octahedral_rotations() {
  std::vector<Rotation> out{Rotation()};
  const Vec3 axes[3] = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  for (const auto& ax : axes)
    for (int q = 1; q <= 3; ++q) out.push_back(Rotation::axis_angle(ax, q * kPi / 2));
  const Vec3 edges[6] = {{1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1}};
  for (const auto& ax : edges) out.push_back(Rotation::axis_angle(ax, kPi));
  const Vec3 diags[4] = {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}};
  for (const auto& ax : diags)
    for (int q = 1; q <= 2; ++q) out.push_back(Rotation::axis_angle(ax, q * 2 * kPi / 3));
  return out;
}

namespace {

bool near_integer(double x, int& out) {
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(x))) return false;
  out = static_cast<int>(r);
  return true;
}

GridCompatibleElement make_compatible_impl(const GalileiElement& g, const ModeLattice& lat, bool translation_on_grid) {
  GridCompatibleElement out;
  out.g = g;
  const Mat3 r = g.R.matrix();
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      int v = 0;
      if (!near_integer(r(i, k), v))
        throw Error(ErrorCode::NotGridCompatible, "rotation is not in the octahedral group");
      out.rotation(i, k) = v;
    }
  if (translation_on_grid) {
    for (int i = 0; i < 3; ++i)
      if (!near_integer(g.a(i) / lat.grid_spacing(), out.translation[static_cast<std::size_t>(i)]))
        throw Error(ErrorCode::NotGridCompatible, "translation is not on the position grid");
  }
  for (const auto& s : lat.species()) {
    IntVec3 kappa{};
    for (int i = 0; i < 3; ++i)
      if (!near_integer(s.mass * g.v(i) / lat.momentum_quantum(), kappa[static_cast<std::size_t>(i)]))
        throw Error(ErrorCode::NotGridCompatible, "m v is not on the momentum lattice for species '" + s.name + "'");
    out.boost.push_back(kappa);
  }
  return out;
}

IntVec3 rotate(const Eigen::Matrix3i& r, const IntVec3& k) {
  IntVec3 out{};
  for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = r(i, 0) * k[0] + r(i, 1) * k[1] + r(i, 2) * k[2];
  return out;
}

IntVec3 add(const IntVec3& a, const IntVec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

bool boost_is_zero(const GridCompatibleElement& g) {
  for (const auto& k : g.boost)
    if (k != IntVec3{0, 0, 0}) return false;
  return true;
}

}  // namespace

GridCompatibleElement make_grid_compatible(const GalileiElement& g, const ModeLattice& lattice) {
  return make_compatible_impl(g, lattice, true);
}

ModeImage mode_image(const GridCompatibleElement& g, const ModeLattice& lat, std::size_t mode) {
  const Mode m = lat.mode(mode);
  const Species& s = lat.species(m.species);
  const IntVec3 kp = lat.wrap(add(rotate(g.rotation, m.k), g.boost.at(static_cast<std::size_t>(m.species))));
  const double e = lat.energy({m.species, kp, 0});
  const cplx phase = std::exp(-kI * (e * g.g.b - lat.momentum(kp).dot(g.g.a)) / lat.hbar());
  const CMatrix d = wigner_d(s.spin, g.g.R).m;
  const int col = s.spin.index_of(m.two_lambda);
  ModeImage out;
  for (int i = 0; i < s.spin.dim(); ++i)
    if (d(i, col) != cplx{})
      out.terms.emplace_back(lat.mode_index({m.species, kp, s.spin.two_lambda(i)}), phase * d(i, col));
  return out;
}

SparseOp galilei_unitary(const GridCompatibleElement& g, const FockSpace& space) {
  const ModeLattice& lat = space.lattice();
  if (g.boost.size() != lat.species().size())
    throw Error(ErrorCode::NotGridCompatible, "element was validated against a different lattice");
  std::vector<ModeImage> images;
  images.reserve(lat.mode_count());
  for (std::size_t q = 0; q < lat.mode_count(); ++q) images.push_back(mode_image(g, lat, q));

  std::vector<Triplet> trip;
  for (Eigen::Index j = 0; j < space.dim(); ++j) {
    const Occupation& occ = space.state(j);
    FockVector v = vacuum(lat);
    for (std::size_t i = occ.size(); i-- > 0;) {
      FockVector next(lat);
      for (const auto& [q, c] : images[occ[i]].terms) next += c * create(lat, q, v);
      v = std::move(next);
    }
    double fact = 1.0;  // prod n_q! of the canonical state
    for (std::size_t i = 1, run = 1; i < occ.size(); ++i) {
      run = occ[i] == occ[i - 1] ? run + 1 : 1;
      fact *= static_cast<double>(run);
    }
    const double norm = 1.0 / std::sqrt(fact);
    for (const auto& [o, a] : v.terms()) trip.emplace_back(*space.index_of(o), j, a * norm);
  }
  SparseOp u(space.dim(), space.dim());
  u.setFromTriplets(trip.begin(), trip.end());
  return u;
}

std::vector<Eigen::Index> non_wrapping_columns(const GridCompatibleElement& g1, const GridCompatibleElement& g2,
                                               const FockSpace& space) {
  const ModeLattice& lat = space.lattice();
  const int h = lat.half_width();
  auto inside = [h](const IntVec3& k) {
    for (int c : k)
      if (c < -h || c > h) return false;
    return true;
  };
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < space.dim(); ++j) {
    bool ok = true;
    for (auto q : space.state(j)) {
      const Mode m = lat.mode(q);
      const auto sp = static_cast<std::size_t>(m.species);
      const IntVec3 k1 = add(rotate(g1.rotation, m.k), g1.boost[sp]);
      const IntVec3 k2 = add(rotate(g2.rotation, k1), g2.boost[sp]);
      if (!inside(k1) || !inside(k2)) {
        ok = false;
        break;
      }
    }
    if (ok) cols.push_back(j);
  }
  return cols;
}

CheckReport projective_composition_check(const GalileiElement& g2, const GalileiElement& g1, const FockSpace& space,
                                         double tol) {
  const ModeLattice& lat = space.lattice();
  const auto c1 = make_compatible_impl(g1, lat, false);
  const auto c2 = make_compatible_impl(g2, lat, false);
  const auto c21 = make_compatible_impl(compose(g2, g1), lat, false);
  const SparseOp lhs = galilei_unitary(c2, space) * galilei_unitary(c1, space);
  const SparseOp u21 = galilei_unitary(c21, space);
  const double zeta_unit = projective_phase(g2, g1, 1.0);
  const auto mass = space.total_mass();
  std::vector<Triplet> t;
  for (Eigen::Index j = 0; j < space.dim(); ++j)
    t.emplace_back(j, j, std::exp(kI * zeta_unit * mass[static_cast<std::size_t>(j)] / lat.hbar()));
  SparseOp phase(space.dim(), space.dim());
  phase.setFromTriplets(t.begin(), t.end());
  const SparseOp diff = lhs - phase * u21;
  const auto cols = non_wrapping_columns(c1, c2, space);
  CheckReport rep;
  rep.tolerance = tol;
  rep.add("|U(g2)U(g1) - exp(i zeta M)U(g2 g1)|", restricted_max(diff, cols, space.dim()));
  rep.add("non-wrapping columns " + std::to_string(cols.size()) + "/" + std::to_string(space.dim()), 0.0);
  return rep.finalize_below();
}

namespace {

IntVec3 image_point(const GridCompatibleElement& g, const ModeLattice& lat, const GridPoint& x, double& t_out) {
  const SpaceTimePoint p = act(g.g, {lat.position(x.j), x.t});
  IntVec3 j{};
  for (int i = 0; i < 3; ++i)
    if (!near_integer(p.x(i) / lat.grid_spacing(), j[static_cast<std::size_t>(i)]))
      throw Error(ErrorCode::OffGridImage, "transformed point is not on the position grid");
  t_out = p.t;
  return lat.wrap(j);
}

}  // namespace

CheckReport verify_field_transformation(const GridCompatibleElement& g, const FockSpace& space, const FieldSpec& f,
                                        double tol, DInverseForm form) {
  return verify_field_transformation(g, galilei_unitary(g, space), space, f, tol, form);
}

CheckReport verify_field_transformation(const GridCompatibleElement& g, const SparseOp& u, const FockSpace& space,
                                        const FieldSpec& f, double tol, DInverseForm form) {
  const ModeLattice& lat = space.lattice();
  if (!boost_is_zero(g) && f.x.t != 0.0)
    throw Error(ErrorCode::NotGridCompatible, "boosted field checks are exact only at t = 0 on the lattice");
  const Species& s = lat.species(f.species);
  double tp = 0.0;
  const IntVec3 jp = image_point(g, lat, f.x, tp);
  const double gamma = cocycle_gamma(g.g, {lat.position(f.x.j), f.x.t});

  const CMatrix dinv = form == DInverseForm::Direct ? wigner_d(s.spin, g.g.R.inverse()).m
                                                    : CMatrix(wigner_d(s.spin, g.g.R).m.adjoint());
  const bool creation = f.variant == FieldVariant::Creation;
  const cplx phase = std::exp((creation ? -1.0 : 1.0) * kI * s.mass * gamma / lat.hbar());
  const int row = s.spin.index_of(f.two_lambda);

  SparseOp pred(space.dim(), space.dim());
  for (int i = 0; i < s.spin.dim(); ++i) {
    cplx c = dinv(row, i);
    if (creation) c = std::conj(c);
    if (c == cplx{}) continue;
    FieldSpec fp = f;
    fp.two_lambda = s.spin.two_lambda(i);
    fp.x = {jp, tp};
    pred += realize_field(space, fp) * (phase * c);
  }
  const SparseOp lhs = u * realize_field(space, f) * SparseOp(u.adjoint());
  CheckReport rep;
  rep.tolerance = tol;
  rep.add(std::string("U psi U^dagger - law (") + to_string(f.variant) + ")", max_abs(SparseOp(lhs - pred)));
  return rep.finalize_below();
}

namespace {

struct Weights {
  cplx a, adag, bdag;
};

Weights weights_of(const Species& s, FieldVariant v) {
  switch (v) {
    case FieldVariant::Annihilation: return {1.0, 0.0, 0.0};
    case FieldVariant::Creation: return {0.0, 1.0, 0.0};
    case FieldVariant::AntiparticleCreation: return {0.0, 0.0, 1.0};
    case FieldVariant::General: return {s.xi, 0.0, s.eta};
  }
  return {};
}

}  // namespace

CheckReport equal_time_commutator(const FockSpace& space, const FieldSpec& f, const FieldSpec& g, int sign, double tol,
                                  bool dagger_second) {
  const ModeLattice& lat = space.lattice();
  if (f.x.t != g.x.t) throw Error(ErrorCode::InvalidArgument, "equal-time commutator needs equal times");
  if (sign == 0) sign = exchange_sign(lat.species(f.species).statistics);
  const SparseOp F = realize_field(space, f);
  const SparseOp G = dagger_second ? SparseOp(realize_field(space, g).adjoint()) : realize_field(space, g);
  SparseOp res = graded_commutator(F, G, sign);

  cplx c{};
  if (f.species == g.species && f.two_lambda == g.two_lambda && f.x.j == g.x.j) {
    const Weights wf = weights_of(lat.species(f.species), f.variant);
    const Weights wg = weights_of(lat.species(g.species), g.variant);
    if (dagger_second)
      c = wf.a * std::conj(wg.a) - static_cast<double>(sign) * (wf.adag * std::conj(wg.adag) + wf.bdag * std::conj(wg.bdag));
    else
      c = wf.a * wg.adag - static_cast<double>(sign) * wf.adag * wg.a;
  }
  if (c != cplx{}) res -= sparse_identity(space.dim()) * (c * lat.delta_weight());
  CheckReport rep;
  rep.tolerance = tol;
  rep.add("expected coefficient |c| (n/L)^3 = " + std::to_string(std::abs(c) * lat.delta_weight()), 0.0);
  rep.add("[F, G]-/+ - c delta (sub-cap)", restricted_max(res, space.subcap_indices(), space.dim()));
  return rep.finalize_below();
}

HermiticityReport hermiticity_obstruction(const FockSpace& space, int species, const GalileiElement& boost,
                                          double separation, double tol) {
  const ModeLattice& lat = space.lattice();
  if (distance(boost, GalileiElement{boost.b, boost.a, boost.v, Rotation()}, true) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "hermiticity obstruction expects an element without rotation");
  if (boost.v.norm() == 0.0) throw Error(ErrorCode::InvalidArgument, "hermiticity obstruction needs a nonzero boost");
  const GridCompatibleElement g = make_grid_compatible(boost, lat);
  const double m = lat.species(species).mass;
  const int two_lambda = lat.species(species).spin.two_lambda(0);
  const SparseOp u = galilei_unitary(g, space);
  const SparseOp ud = u.adjoint();

  HermiticityReport rep;
  rep.separation = separation;
  rep.min_nonzero_gamma_residual = std::numeric_limits<double>::infinity();
  bool any_nonzero = false;
  bool bounds_ok = true;
  const int h = lat.half_width();
  for (int j0 = -h; j0 <= h; ++j0)
    for (int j1 = -h; j1 <= h; ++j1)
      for (int j2 = -h; j2 <= h; ++j2) {
        const GridPoint x{{j0, j1, j2}, 0.0};
        double tp = 0.0;
        const IntVec3 jp = image_point(g, lat, x, tp);
        const double gamma = cocycle_gamma(boost, {lat.position(x.j), 0.0});
        const SparseOp om = u * annihilation_field(space, species, two_lambda, x) * ud;
        const SparseOp op = om.adjoint();
        const SparseOp target_m = annihilation_field(space, species, two_lambda, {jp, tp});
        const SparseOp target = target_m + SparseOp(target_m.adjoint());
        auto residual = [&](double kappa) {
          const double ph = m * gamma / lat.hbar();
          const SparseOp t = om * std::exp(kI * (kappa - 1.0) * ph) + op * std::exp(-kI * (kappa - 1.0) * ph);
          return frobenius(SparseOp(t - target * std::exp(kI * kappa * ph)));
        };
        HermiticityReport::Point pt;
        pt.j = x.j;
        pt.gamma = gamma;
        pt.residual = residual(1.0);
        pt.bound = 2.0 * std::abs(std::sin(m * gamma / lat.hbar())) * frobenius(SparseOp(target_m.adjoint()));
        rep.max_test_mode_residual = std::max(rep.max_test_mode_residual, residual(0.0));
        if (std::abs(std::sin(m * gamma / lat.hbar())) < 1e-9) {
          rep.max_zero_gamma_residual = std::max(rep.max_zero_gamma_residual, pt.residual);
        } else {
          any_nonzero = true;
          rep.min_nonzero_gamma_residual = std::min(rep.min_nonzero_gamma_residual, pt.residual);
          bounds_ok = bounds_ok && pt.residual >= pt.bound * (1.0 - 1e-9) - tol;
        }
        rep.points.push_back(pt);
      }
  if (!any_nonzero) rep.min_nonzero_gamma_residual = 0.0;
  rep.passed = any_nonzero && bounds_ok && rep.min_nonzero_gamma_residual > separation &&
               rep.max_test_mode_residual < tol;
  return rep;
}

EomReport equation_of_motion_check(const FockSpace& space, const FieldSpec& f, const SparseOp& H, double t, double dt,
                                   double tol) {
  const CMatrix hd = CMatrix(H);
  if ((hd - hd.adjoint()).cwiseAbs().maxCoeff() > 1e-11 * std::max(1.0, hd.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::InvalidArgument, "Hamiltonian is not Hermitian");
  const double hbar = space.lattice().hbar();
  FieldSpec f0 = f;
  f0.x.t = 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hd);
  const CMatrix& vecs = eig.eigenvectors();
  const Eigen::VectorXd& e = eig.eigenvalues();
  const CMatrix psi0 = vecs.adjoint() * CMatrix(realize_field(space, f0)) * vecs;
  const Eigen::Index d = psi0.rows();

  auto residual = [&](double h) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index k = 0; k < d; ++k) {
        if (psi0(i, k) == cplx{}) continue;
        const double w = (e(i) - e(k)) / hbar;
        auto at = [&](double tau) { return psi0(i, k) * std::exp(kI * w * tau); };
        const cplx lhs = kI * hbar * (at(t + h) - at(t - h)) / (2.0 * h);
        const cplx rhs = at(t) * (e(k) - e(i));
        s += std::norm(lhs - rhs);
      }
    return std::sqrt(s);
  };
  EomReport rep;
  rep.residual_dt = residual(dt);
  rep.residual_half = residual(dt / 2);
  rep.exact = rep.residual_dt < tol && rep.residual_half < tol;
  rep.ratio = rep.residual_half > 0.0 ? rep.residual_dt / rep.residual_half : 0.0;
  rep.fitted_c = rep.residual_dt / (dt * dt);
  rep.passed = rep.exact || std::abs(rep.ratio / 4.0 - 1.0) < 0.2;
  return rep;
}

}  // namespace gqft
