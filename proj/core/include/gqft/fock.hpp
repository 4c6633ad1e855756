#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gqft/check_report.hpp"
#include "gqft/linalg.hpp"
#include "gqft/spin.hpp"

namespace gqft {

enum class Statistics { Bose, Fermi };

/// +1 for commutators (Bose), -1 for anticommutators (Fermi).
inline int exchange_sign(Statistics s) { return s == Statistics::Bose ? 1 : -1; }

struct Species {
  std::string name;
  double mass = 1.0;
  double internal_energy = 0.0;
  SpinLabel spin{};
  Statistics statistics = Statistics::Bose;
  std::optional<std::string> antiparticle_of;  // set on the antiparticle entry
  cplx xi{1.0, 0.0};
  cplx eta{0.0, 0.0};

  void validate() const;
};

using IntVec3 = std::array<int, 3>;

/// One-particle label: species index, integer momentum k, spin projection 2*lambda.
struct Mode {
  int species = 0;
  IntVec3 k{0, 0, 0};
  int two_lambda = 0;

  friend bool operator==(const Mode&, const Mode&) = default;
};

/// Periodic box of side L with momenta p = 2 pi hbar k / L, k in {-(n-1)/2 .. (n-1)/2}^3,
/// and the dual position grid x = (L / n) j. Mode order: species, lexicographic k, lambda.
class ModeLattice {
 public:
  ModeLattice(double L, int n_per_axis, std::vector<Species> species, int n_max, double hbar = 1.0);

  double box_length() const { return L_; }
  int n_per_axis() const { return n_; }
  int half_width() const { return (n_ - 1) / 2; }
  int n_max() const { return n_max_; }
  double hbar() const { return hbar_; }
  const std::vector<Species>& species() const { return species_; }
  const Species& species(int i) const { return species_.at(static_cast<std::size_t>(i)); }
  int species_index(const std::string& name) const;

  std::size_t momentum_count() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  std::size_t mode_count() const { return offsets_.back(); }
  std::size_t mode_index(const Mode& m) const;
  Mode mode(std::size_t index) const;
  bool is_fermion_mode(std::size_t index) const;

  /// Lexicographic momentum index of k (each component in [-h, h]).
  std::size_t momentum_index(const IntVec3& k) const;
  IntVec3 momentum_label(std::size_t index) const;
  /// Reduces an integer onto [-h, h] modulo n.
  int wrap(int k) const;
  IntVec3 wrap(const IntVec3& k) const;

  double momentum_quantum() const { return 2.0 * kPi * hbar_ / L_; }
  double grid_spacing() const { return L_ / n_; }
  Vec3 momentum(const IntVec3& k) const;
  Vec3 position(const IntVec3& j) const;
  /// E = p^2 / 2m + W for the species of `m`.
  double energy(const Mode& m) const;
  /// Discrete delta^3(0) = (n / L)^3.
  double delta_weight() const;

  /// Identifies lattices with identical parameters.
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  double L_;
  int n_;
  std::vector<Species> species_;
  int n_max_;
  double hbar_;
  std::vector<std::size_t> offsets_;
  std::string fingerprint_;
};

/// Sorted multiset of occupied mode indices (repetition = Bose occupation).
using Occupation = std::vector<std::uint16_t>;

int total_quanta(const Occupation& occ);
int occupation_of(const Occupation& occ, std::size_t mode);

/// Sparse amplitude assignment over occupation states of one lattice.
class FockVector {
 public:
  using Map = std::map<Occupation, cplx>;

  explicit FockVector(const ModeLattice& lattice);

  const std::string& lattice_fingerprint() const { return fingerprint_; }
  const Map& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// Set when an operation dropped amplitude at the N_max cap.
  bool overflowed() const { return overflow_; }
  void mark_overflow() { overflow_ = true; }

  void add(const Occupation& occ, cplx amplitude);
  cplx amplitude(const Occupation& occ) const;
  double norm() const;

  FockVector& operator+=(const FockVector& rhs);
  FockVector& operator*=(cplx s);
  friend FockVector operator*(cplx s, FockVector v) { return v *= s; }
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }

 private:
  std::string fingerprint_;
  Map terms_;
  bool overflow_ = false;
};

FockVector vacuum(const ModeLattice& lattice);
FockVector create(const ModeLattice& lattice, const Mode& mode, const FockVector& v);
FockVector annihilate(const ModeLattice& lattice, const Mode& mode, const FockVector& v);
FockVector create(const ModeLattice& lattice, std::size_t mode, const FockVector& v);
FockVector annihilate(const ModeLattice& lattice, std::size_t mode, const FockVector& v);

/// <u|v>; throws LatticeMismatch for vectors of different lattices.
cplx inner(const FockVector& u, const FockVector& v);

/// <v|N|v> / <v|v>; zero for the zero vector.
double number_expectation(const FockVector& v);

/// Result of raising/lowering one mode on a basis occupation.
struct LadderResult {
  Occupation occ;
  double amplitude = 0.0;  // includes sqrt(n) factors and fermionic sign
  bool overflow = false;   // raising blocked by the N_max cap
};

std::optional<LadderResult> raise(const ModeLattice& lattice, const Occupation& occ, std::size_t mode);
std::optional<LadderResult> lower(const ModeLattice& lattice, const Occupation& occ, std::size_t mode);

struct OccupationHash {
  std::size_t operator()(const Occupation& o) const noexcept;
};

/// Enumerated truncated occupation basis of a lattice with operator builders.
class FockSpace {
 public:
  explicit FockSpace(ModeLattice lattice);

  const ModeLattice& lattice() const { return lattice_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(states_.size()); }
  const Occupation& state(Eigen::Index i) const { return states_[static_cast<std::size_t>(i)]; }
  std::optional<Eigen::Index> index_of(const Occupation& occ) const;

  SparseOp annihilation(std::size_t mode) const;
  SparseOp creation(std::size_t mode) const;
  /// sum_q c_q a(q) for a list of (mode, coefficient) pairs.
  SparseOp annihilator_combination(const std::vector<std::pair<std::size_t, cplx>>& terms) const;

  /// Diagonal operators.
  SparseOp number_operator() const;
  SparseOp species_number_operator(int species) const;
  SparseOp total_mass_operator() const;
  std::vector<double> total_mass() const;
  std::vector<int> quanta() const;

  /// Basis indices on which no single raise is cut off by the cap (N <= N_max - 1,
  /// or a completely filled all-fermion lattice).
  std::vector<Eigen::Index> subcap_indices() const;

  CVector to_dense(const FockVector& v) const;
  FockVector from_dense(const CVector& v, double drop = 0.0) const;

 private:
  ModeLattice lattice_;
  std::vector<Occupation> states_;
  std::unordered_map<Occupation, Eigen::Index, OccupationHash> index_;
};

/// Max entry of `op` restricted to columns (and rows) in `indices`.
double restricted_max(const SparseOp& op, const std::vector<Eigen::Index>& cols, Eigen::Index dim,
                      bool restrict_rows = false);

/// Brute-force [a(k'), a^dag(k)]-/+ = delta, [a, a]-/+ = [a^dag, a^dag]-/+ = 0 over all
/// mode pairs, evaluated on sub-cap columns.
CheckReport mode_commutator_check(const FockSpace& space, double tol);

struct SpanReport {
  Eigen::Index rank = 0;
  Eigen::Index target = 0;      // dim^2
  std::size_t monomials = 0;
};

/// Rank of the normal-ordered monomials prod_q a^dag(q)^{n_q} prod_q a(q)^{m_q} with
/// n_q, m_q <= max_power, each flattened to a vector of dim^2 entries. Throws
/// InvalidArgument when the monomial count exceeds 4096.
SpanReport monomial_span(const FockSpace& space, int max_power);

}  // namespace gqft
