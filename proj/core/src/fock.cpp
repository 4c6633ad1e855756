#include "gqft/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "gqft/error.hpp"

namespace gqft {

void Species::validate() const {
  if (name.empty()) throw Error(ErrorCode::ConfigInvalid, "species name must be nonempty");
  if (!std::isfinite(mass) || mass == 0.0)
    throw Error(ErrorCode::ConfigInvalid, "species '" + name + "': mass must be finite and nonzero");
  if (!std::isfinite(internal_energy))
    throw Error(ErrorCode::ConfigInvalid, "species '" + name + "': internal energy must be finite");
  if (spin.two_s < 0) throw Error(ErrorCode::ConfigInvalid, "species '" + name + "': negative spin");
  const bool finite = std::isfinite(xi.real()) && std::isfinite(xi.imag()) &&
                      std::isfinite(eta.real()) && std::isfinite(eta.imag());
  if (!finite) throw Error(ErrorCode::ConfigInvalid, "species '" + name + "': xi/eta must be finite");
  if (xi == cplx{} && eta == cplx{})
    throw Error(ErrorCode::ConfigInvalid, "species '" + name + "': xi and eta cannot both vanish");
}

ModeLattice::ModeLattice(double L, int n_per_axis, std::vector<Species> species, int n_max, double hbar)
    : L_(L), n_(n_per_axis), species_(std::move(species)), n_max_(n_max), hbar_(hbar) {
  if (!(L_ > 0.0) || !std::isfinite(L_)) throw Error(ErrorCode::ConfigInvalid, "box length must be positive");
  if (n_ < 1 || n_ % 2 == 0) throw Error(ErrorCode::ConfigInvalid, "n_per_axis must be a positive odd integer");
  if (n_max_ < 1) throw Error(ErrorCode::ConfigInvalid, "N_max must be >= 1");
  if (!(hbar_ > 0.0)) throw Error(ErrorCode::ConfigInvalid, "hbar must be positive");
  if (species_.empty()) throw Error(ErrorCode::ConfigInvalid, "at least one species is required");
  offsets_.push_back(0);
  for (const auto& s : species_) {
    s.validate();
    offsets_.push_back(offsets_.back() + momentum_count() * static_cast<std::size_t>(s.spin.dim()));
  }
  for (std::size_t i = 0; i < species_.size(); ++i)
    for (std::size_t j = i + 1; j < species_.size(); ++j)
      if (species_[i].name == species_[j].name)
        throw Error(ErrorCode::ConfigInvalid, "duplicate species name '" + species_[i].name + "'");
  if (mode_count() > 65535) throw Error(ErrorCode::ConfigInvalid, "too many modes");

  char buf[128];
  std::snprintf(buf, sizeof buf, "L=%.17g;n=%d;N=%d;hbar=%.17g", L_, n_, n_max_, hbar_);
  fingerprint_ = buf;
  for (const auto& s : species_) {
    std::snprintf(buf, sizeof buf, ";%s:%.17g:%.17g:%d:%d", s.name.c_str(), s.mass, s.internal_energy,
                  s.spin.two_s, s.statistics == Statistics::Bose ? 0 : 1);
    fingerprint_ += buf;
  }
}

int ModeLattice::species_index(const std::string& name) const {
  for (std::size_t i = 0; i < species_.size(); ++i)
    if (species_[i].name == name) return static_cast<int>(i);
  throw Error(ErrorCode::InvalidArgument, "unknown species '" + name + "'");
}

int ModeLattice::wrap(int k) const {
  const int h = half_width();
  int r = ((k + h) % n_ + n_) % n_;
  return r - h;
}

IntVec3 ModeLattice::wrap(const IntVec3& k) const { return {wrap(k[0]), wrap(k[1]), wrap(k[2])}; }

std::size_t ModeLattice::momentum_index(const IntVec3& k) const {
  const int h = half_width();
  for (int c : k)
    if (c < -h || c > h) throw Error(ErrorCode::InvalidArgument, "momentum label outside lattice");
  return (static_cast<std::size_t>(k[0] + h) * n_ + static_cast<std::size_t>(k[1] + h)) * n_ +
         static_cast<std::size_t>(k[2] + h);
}

IntVec3 ModeLattice::momentum_label(std::size_t index) const {
  const int h = half_width();
  const int k3 = static_cast<int>(index % n_);
  const int k2 = static_cast<int>((index / n_) % n_);
  const int k1 = static_cast<int>(index / (static_cast<std::size_t>(n_) * n_));
  return {k1 - h, k2 - h, k3 - h};
}

std::size_t ModeLattice::mode_index(const Mode& m) const {
  if (m.species < 0 || static_cast<std::size_t>(m.species) >= species_.size())
    throw Error(ErrorCode::InvalidArgument, "species index out of range");
  const SpinLabel s = species_[static_cast<std::size_t>(m.species)].spin;
  if (std::abs(m.two_lambda) > s.two_s || (m.two_lambda + s.two_s) % 2 != 0)
    throw Error(ErrorCode::InvalidArgument, "spin projection outside representation");
  return offsets_[static_cast<std::size_t>(m.species)] +
         momentum_index(m.k) * static_cast<std::size_t>(s.dim()) + static_cast<std::size_t>(s.index_of(m.two_lambda));
}

Mode ModeLattice::mode(std::size_t index) const {
  if (index >= mode_count()) throw Error(ErrorCode::InvalidArgument, "mode index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const auto sp = static_cast<std::size_t>(std::distance(offsets_.begin(), it) - 1);
  const std::size_t local = index - offsets_[sp];
  const SpinLabel s = species_[sp].spin;
  const auto d = static_cast<std::size_t>(s.dim());
  return {static_cast<int>(sp), momentum_label(local / d), s.two_lambda(static_cast<int>(local % d))};
}

bool ModeLattice::is_fermion_mode(std::size_t index) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const auto sp = static_cast<std::size_t>(std::distance(offsets_.begin(), it) - 1);
  return species_[sp].statistics == Statistics::Fermi;
}

Vec3 ModeLattice::momentum(const IntVec3& k) const {
  return momentum_quantum() * Vec3(k[0], k[1], k[2]);
}

Vec3 ModeLattice::position(const IntVec3& j) const { return grid_spacing() * Vec3(j[0], j[1], j[2]); }

double ModeLattice::energy(const Mode& m) const {
  const Species& s = species(m.species);
  return momentum(m.k).squaredNorm() / (2.0 * s.mass) + s.internal_energy;
}

double ModeLattice::delta_weight() const {
  const double w = n_ / L_;
  return w * w * w;
}

int total_quanta(const Occupation& occ) { return static_cast<int>(occ.size()); }

int occupation_of(const Occupation& occ, std::size_t mode) {
  const auto r = std::equal_range(occ.begin(), occ.end(), static_cast<std::uint16_t>(mode));
  return static_cast<int>(std::distance(r.first, r.second));
}

namespace {

// (-1)^(number of occupied fermion modes with index below `mode`)
double fermion_sign(const ModeLattice& lattice, const Occupation& occ, std::size_t mode) {
  int count = 0;
  for (auto q : occ) {
    if (q >= mode) break;
    if (lattice.is_fermion_mode(q)) ++count;
  }
  return count % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

std::optional<LadderResult> raise(const ModeLattice& lattice, const Occupation& occ, std::size_t mode) {
  const int n = occupation_of(occ, mode);
  const bool fermion = lattice.is_fermion_mode(mode);
  if (fermion && n > 0) return std::nullopt;
  if (total_quanta(occ) + 1 > lattice.n_max()) return LadderResult{{}, 0.0, true};
  LadderResult r;
  r.occ = occ;
  r.occ.insert(std::upper_bound(r.occ.begin(), r.occ.end(), static_cast<std::uint16_t>(mode)),
               static_cast<std::uint16_t>(mode));
  r.amplitude = fermion ? fermion_sign(lattice, occ, mode) : std::sqrt(static_cast<double>(n + 1));
  return r;
}

std::optional<LadderResult> lower(const ModeLattice& lattice, const Occupation& occ, std::size_t mode) {
  const int n = occupation_of(occ, mode);
  if (n == 0) return std::nullopt;
  const bool fermion = lattice.is_fermion_mode(mode);
  LadderResult r;
  r.occ = occ;
  r.occ.erase(std::lower_bound(r.occ.begin(), r.occ.end(), static_cast<std::uint16_t>(mode)));
  r.amplitude = fermion ? fermion_sign(lattice, occ, mode) : std::sqrt(static_cast<double>(n));
  return r;
}

FockVector::FockVector(const ModeLattice& lattice) : fingerprint_(lattice.fingerprint()) {}

void FockVector::add(const Occupation& occ, cplx amplitude) {
  if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag()))
    throw Error(ErrorCode::InvalidArgument, "non-finite amplitude");
  auto [it, inserted] = terms_.emplace(occ, amplitude);
  if (!inserted) {
    it->second += amplitude;
    if (it->second == cplx{}) terms_.erase(it);
  } else if (amplitude == cplx{}) {
    terms_.erase(it);
  }
}

cplx FockVector::amplitude(const Occupation& occ) const {
  const auto it = terms_.find(occ);
  return it == terms_.end() ? cplx{} : it->second;
}

double FockVector::norm() const {
  double s = 0.0;
  for (const auto& [occ, a] : terms_) s += std::norm(a);
  return std::sqrt(s);
}

FockVector& FockVector::operator+=(const FockVector& rhs) {
  if (rhs.fingerprint_ != fingerprint_) throw Error(ErrorCode::LatticeMismatch, "adding vectors of different lattices");
  for (const auto& [occ, a] : rhs.terms_) add(occ, a);
  overflow_ = overflow_ || rhs.overflow_;
  return *this;
}

FockVector& FockVector::operator*=(cplx s) {
  if (s == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [occ, a] : terms_) a *= s;
  return *this;
}

FockVector vacuum(const ModeLattice& lattice) {
  FockVector v(lattice);
  v.add({}, 1.0);
  return v;
}

FockVector create(const ModeLattice& lattice, std::size_t mode, const FockVector& v) {
  if (v.lattice_fingerprint() != lattice.fingerprint())
    throw Error(ErrorCode::LatticeMismatch, "vector does not belong to this lattice");
  FockVector out(lattice);
  if (v.overflowed()) out.mark_overflow();
  for (const auto& [occ, a] : v.terms()) {
    auto r = raise(lattice, occ, mode);
    if (!r) continue;
    if (r->overflow) {
      out.mark_overflow();
      continue;
    }
    out.add(r->occ, a * r->amplitude);
  }
  return out;
}

FockVector annihilate(const ModeLattice& lattice, std::size_t mode, const FockVector& v) {
  if (v.lattice_fingerprint() != lattice.fingerprint())
    throw Error(ErrorCode::LatticeMismatch, "vector does not belong to this lattice");
  FockVector out(lattice);
  if (v.overflowed()) out.mark_overflow();
  for (const auto& [occ, a] : v.terms()) {
    auto r = lower(lattice, occ, mode);
    if (r) out.add(r->occ, a * r->amplitude);
  }
  return out;
}

FockVector create(const ModeLattice& lattice, const Mode& mode, const FockVector& v) {
  return create(lattice, lattice.mode_index(mode), v);
}

FockVector annihilate(const ModeLattice& lattice, const Mode& mode, const FockVector& v) {
  return annihilate(lattice, lattice.mode_index(mode), v);
}

cplx inner(const FockVector& u, const FockVector& v) {
  if (u.lattice_fingerprint() != v.lattice_fingerprint())
    throw Error(ErrorCode::LatticeMismatch, "inner product across lattices");
  cplx s{};
  const auto& small = u.terms().size() <= v.terms().size() ? u.terms() : v.terms();
  const bool u_small = &small == &u.terms();
  for (const auto& [occ, a] : small) {
    const cplx b = u_small ? v.amplitude(occ) : u.amplitude(occ);
    s += u_small ? std::conj(a) * b : std::conj(b) * a;
  }
  return s;
}

double number_expectation(const FockVector& v) {
  double num = 0.0, den = 0.0;
  for (const auto& [occ, a] : v.terms()) {
    num += std::norm(a) * total_quanta(occ);
    den += std::norm(a);
  }
  return den > 0.0 ? num / den : 0.0;
}

std::size_t OccupationHash::operator()(const Occupation& o) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto q : o) {
    h ^= q + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h ^ o.size();
}

FockSpace::FockSpace(ModeLattice lattice) : lattice_(std::move(lattice)) {
  const std::size_t modes = lattice_.mode_count();
  Occupation cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int remaining) {
    states_.push_back(cur);
    if (remaining == 0) return;
    for (std::size_t q = start; q < modes; ++q) {
      const bool fermion = lattice_.is_fermion_mode(q);
      if (fermion && !cur.empty() && cur.back() == q) continue;
      cur.push_back(static_cast<std::uint16_t>(q));
      rec(q, remaining - 1);
      cur.pop_back();
    }
  };
  rec(0, lattice_.n_max());
  std::stable_sort(states_.begin(), states_.end(),
                   [](const Occupation& a, const Occupation& b) { return a.size() < b.size(); });
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], static_cast<Eigen::Index>(i));
}

std::optional<Eigen::Index> FockSpace::index_of(const Occupation& occ) const {
  const auto it = index_.find(occ);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseOp FockSpace::annihilator_combination(const std::vector<std::pair<std::size_t, cplx>>& terms) const {
  std::vector<cplx> coef(lattice_.mode_count(), cplx{});
  for (const auto& [q, c] : terms) coef.at(q) += c;
  std::vector<Triplet> trip;
  for (Eigen::Index j = 0; j < dim(); ++j) {
    const Occupation& occ = state(j);
    for (std::size_t i = 0; i < occ.size(); ++i) {
      if (i > 0 && occ[i] == occ[i - 1]) continue;
      const cplx c = coef[occ[i]];
      if (c == cplx{}) continue;
      auto r = lower(lattice_, occ, occ[i]);
      trip.emplace_back(*index_of(r->occ), j, c * r->amplitude);
    }
  }
  SparseOp out(dim(), dim());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

SparseOp FockSpace::annihilation(std::size_t mode) const { return annihilator_combination({{mode, 1.0}}); }

SparseOp FockSpace::creation(std::size_t mode) const { return SparseOp(annihilation(mode).adjoint()); }

SparseOp FockSpace::number_operator() const {
  SparseOp n(dim(), dim());
  std::vector<Triplet> t;
  for (Eigen::Index j = 0; j < dim(); ++j)
    if (!state(j).empty()) t.emplace_back(j, j, static_cast<double>(state(j).size()));
  n.setFromTriplets(t.begin(), t.end());
  return n;
}

SparseOp FockSpace::species_number_operator(int species) const {
  SparseOp n(dim(), dim());
  std::vector<Triplet> t;
  for (Eigen::Index j = 0; j < dim(); ++j) {
    int c = 0;
    for (auto q : state(j))
      if (lattice_.mode(q).species == species) ++c;
    if (c > 0) t.emplace_back(j, j, static_cast<double>(c));
  }
  n.setFromTriplets(t.begin(), t.end());
  return n;
}

std::vector<double> FockSpace::total_mass() const {
  std::vector<double> out(static_cast<std::size_t>(dim()), 0.0);
  for (Eigen::Index j = 0; j < dim(); ++j)
    for (auto q : state(j)) out[static_cast<std::size_t>(j)] += lattice_.species(lattice_.mode(q).species).mass;
  return out;
}

SparseOp FockSpace::total_mass_operator() const {
  const auto m = total_mass();
  std::vector<Triplet> t;
  for (Eigen::Index j = 0; j < dim(); ++j)
    if (m[static_cast<std::size_t>(j)] != 0.0) t.emplace_back(j, j, m[static_cast<std::size_t>(j)]);
  SparseOp out(dim(), dim());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

std::vector<int> FockSpace::quanta() const {
  std::vector<int> out;
  out.reserve(states_.size());
  for (const auto& s : states_) out.push_back(total_quanta(s));
  return out;
}

std::vector<Eigen::Index> FockSpace::subcap_indices() const {
  // Columns on which no single raise is cut off by the cap.
  bool all_fermion = true;
  for (std::size_t q = 0; q < lattice_.mode_count(); ++q) all_fermion = all_fermion && lattice_.is_fermion_mode(q);
  std::vector<Eigen::Index> out;
  for (Eigen::Index j = 0; j < dim(); ++j) {
    const auto n = static_cast<std::size_t>(total_quanta(state(j)));
    if (static_cast<int>(n) < lattice_.n_max() || (all_fermion && n == lattice_.mode_count())) out.push_back(j);
  }
  return out;
}

CVector FockSpace::to_dense(const FockVector& v) const {
  if (v.lattice_fingerprint() != lattice_.fingerprint())
    throw Error(ErrorCode::LatticeMismatch, "vector does not belong to this space");
  CVector out = CVector::Zero(dim());
  for (const auto& [occ, a] : v.terms()) {
    auto idx = index_of(occ);
    if (!idx) throw Error(ErrorCode::InvalidArgument, "occupation outside truncated basis");
    out(*idx) = a;
  }
  return out;
}

FockVector FockSpace::from_dense(const CVector& v, double drop) const {
  FockVector out(lattice_);
  for (Eigen::Index j = 0; j < dim(); ++j)
    if (std::abs(v(j)) > drop) out.add(state(j), v(j));
  return out;
}

double restricted_max(const SparseOp& op, const std::vector<Eigen::Index>& cols, Eigen::Index dim,
                      bool restrict_rows) {
  std::vector<char> mask(static_cast<std::size_t>(dim), 0);
  for (auto c : cols) mask[static_cast<std::size_t>(c)] = 1;
  double m = 0.0;
  for (Eigen::Index k = 0; k < op.outerSize(); ++k)
    for (SparseOp::InnerIterator it(op, k); it; ++it) {
      if (!mask[static_cast<std::size_t>(it.col())]) continue;
      if (restrict_rows && !mask[static_cast<std::size_t>(it.row())]) continue;
      m = std::max(m, std::abs(it.value()));
    }
  return m;
}

CheckReport mode_commutator_check(const FockSpace& space, double tol) {
  const auto& lat = space.lattice();
  const std::size_t modes = lat.mode_count();
  const auto cols = space.subcap_indices();
  std::vector<SparseOp> a(modes), ad(modes);
  for (std::size_t q = 0; q < modes; ++q) {
    a[q] = space.annihilation(q);
    ad[q] = SparseOp(a[q].adjoint());
  }
  const SparseOp id = sparse_identity(space.dim());
  double w_aad = 0.0, w_aa = 0.0, w_adad = 0.0;
  for (std::size_t kp = 0; kp < modes; ++kp)
    for (std::size_t k = 0; k < modes; ++k) {
      const int sign = (lat.is_fermion_mode(kp) && lat.is_fermion_mode(k)) ? -1 : 1;
      SparseOp c1 = graded_commutator(a[kp], ad[k], sign);
      if (kp == k) c1 -= id;
      w_aad = std::max(w_aad, restricted_max(c1, cols, space.dim()));
      w_aa = std::max(w_aa, restricted_max(graded_commutator(a[kp], a[k], sign), cols, space.dim()));
      w_adad = std::max(w_adad, restricted_max(graded_commutator(ad[kp], ad[k], sign), cols, space.dim()));
    }
  CheckReport rep;
  rep.tolerance = tol;
  rep.add("[a(k'),a+(k)]-/+ - delta", w_aad);
  rep.add("[a(k'),a(k)]-/+", w_aa);
  rep.add("[a+(k'),a+(k)]-/+", w_adad);
  return rep.finalize_below();
}

SpanReport monomial_span(const FockSpace& space, int max_power) {
  if (max_power < 0) throw Error(ErrorCode::InvalidArgument, "max_power must be non-negative");
  const std::size_t modes = space.lattice().mode_count();
  const auto base = static_cast<std::size_t>(max_power + 1);
  double count = std::pow(static_cast<double>(base), 2.0 * static_cast<double>(modes));
  if (count > 4096) throw Error(ErrorCode::InvalidArgument, "too many monomials for the span probe");
  const Eigen::Index dim = space.dim();
  std::vector<CMatrix> a(modes), ad(modes);
  for (std::size_t q = 0; q < modes; ++q) {
    a[q] = CMatrix(space.annihilation(q));
    ad[q] = a[q].adjoint();
  }
  const auto total = static_cast<std::size_t>(count);
  CMatrix flat(dim * dim, static_cast<Eigen::Index>(total));
  std::vector<std::size_t> digits(2 * modes, 0);
  for (std::size_t col = 0; col < total; ++col) {
    std::size_t c = col;
    for (auto& d : digits) {
      d = c % base;
      c /= base;
    }
    CMatrix m = CMatrix::Identity(dim, dim);
    for (std::size_t q = 0; q < modes; ++q)
      for (std::size_t k = 0; k < digits[q]; ++k) m = m * ad[q];
    for (std::size_t q = 0; q < modes; ++q)
      for (std::size_t k = 0; k < digits[modes + q]; ++k) m = m * a[q];
    flat.col(static_cast<Eigen::Index>(col)) = Eigen::Map<const CVector>(m.data(), dim * dim);
  }
  Eigen::FullPivLU<CMatrix> lu(flat);
  return {lu.rank(), dim * dim, total};
}

}  // namespace gqft
