#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "gqft/check_report.hpp"
#include "gqft/fields.hpp"

namespace gqft {

/// One field factor psi_lambda(x) of a given species at grid point j (time 0).
struct Leg {
  int species = 0;
  int two_lambda = 0;
  IntVec3 j{0, 0, 0};

  friend auto operator<=>(const Leg&, const Leg&) = default;
};

/// coefficient * psi^+(c_1) ... psi^+(c_N) psi^-(a_1) ... psi^-(a_M)
struct Monomial {
  std::vector<Leg> creation;
  std::vector<Leg> annihilation;
  cplx coefficient{1.0, 0.0};
};

struct OperatorPolynomial {
  std::vector<Monomial> monomials;
  bool hermitian = false;

  /// Throws InvalidArgument for legs that do not fit the lattice.
  void validate(const ModeLattice& lattice) const;
  OperatorPolynomial adjoint() const;
  /// True when some monomial creates more quanta than it removes, so the cap can cut it.
  bool may_truncate() const;
};

/// Canonical coefficient map: legs sorted within each group, fermionic reorderings signed,
/// equal keys merged.
using MonomialKey = std::pair<std::vector<Leg>, std::vector<Leg>>;
std::map<MonomialKey, cplx> canonical_coefficients(const OperatorPolynomial& p, const ModeLattice& lattice);

/// Max coefficient difference between p and its adjoint (0 for a Hermitian polynomial).
double hermiticity_defect(const OperatorPolynomial& p, const ModeLattice& lattice);

/// Matrix of the polynomial on the truncated space. Field matrices are cached per leg.
SparseOp realize(const OperatorPolynomial& p, const FockSpace& space);

/// U(g) O U(g)^dagger.
SparseOp conjugate(const SparseOp& u, const SparseOp& o);
SparseOp conjugate(const GridCompatibleElement& g, const FockSpace& space, const SparseOp& o);

/// Smallest |v| such that m v lies on the momentum lattice for every species.
double minimal_boost_speed(const ModeLattice& lattice);

/// A sampled group element given as a word of generators, applied right to left.
struct GroupSample {
  std::string label;
  std::vector<GalileiElement> word;
  bool kinematic = true;  // no time shift in the word
  bool boost = false;     // some letter carries a boost
};

/// 24 rotations, one grid translation and one minimal boost per axis, one time shift,
/// and `random_words` random products of those. `kinematic_only` drops every sample
/// containing the time shift.
std::vector<GroupSample> sample_elements(const ModeLattice& lattice, unsigned long long seed, int random_words = 20,
                                         bool kinematic_only = false);

/// Product of the generator unitaries of the word.
SparseOp sample_unitary(const GroupSample& s, const FockSpace& space);

/// The single group element word[0] word[1] ... word[k-1].
GalileiElement compose_word(const std::vector<GalileiElement>& word);

enum class Verdict { Invariant, NonInvariant, Inconclusive };
const char* to_string(Verdict v);

struct InvarianceReport {
  std::string name;
  std::vector<Residual> residuals;  // ||U O U^dagger - O||_F per sample
  double op_norm = 0.0;             // ||O||_F
  double pass_tol = 1e-9;
  double fail_floor = 0.0;          // fail_fraction * ||O||_F
  double max_residual = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

/// Conjugates O by every sample and classifies the largest residual:
/// invariant below pass_tol, non-invariant above fail_floor, inconclusive in between.
/// Throws InvalidArgument when pass_tol >= fail_floor.
InvarianceReport check_invariance(const std::string& name, const SparseOp& o, const FockSpace& space,
                                  const std::vector<GroupSample>& samples, double pass_tol = 1e-9,
                                  double fail_fraction = 1e-2);

/// Sum over the grid of sum_lambda psi^+_lambda(x) psi_lambda(x) for one species.
OperatorPolynomial density_polynomial(const ModeLattice& lattice, int species);
/// 1/2 sum_{x,y} V(|x-y|) psi^+(x) psi^+(y) psi(y) psi(x) with minimum-image distances and
/// V(r) = strength * exp(-r^2 / range^2), summed over spin projections.
OperatorPolynomial two_body_polynomial(const ModeLattice& lattice, int species, double strength, double range);
/// Sum over the grid of psi^+_lambda(x).
OperatorPolynomial lone_creation_polynomial(const ModeLattice& lattice, int species, int two_lambda);
/// Sum over the grid of psi^+_lambda(x) psi_lambda(x + d).
OperatorPolynomial displaced_pair_polynomial(const ModeLattice& lattice, int species, int two_lambda, const IntVec3& d);
/// g sum_x psi^+_V(x) psi_N(x) psi_theta(x) + h.c. (scalar legs).
OperatorPolynomial production_polynomial(const ModeLattice& lattice, int v, int n, int theta, double coupling);

/// Reports of the pairwise theorem: local density and two-body interaction (invariant),
/// lone creation field and displaced pair (non-invariant). The interaction is checked over
/// kinematic samples only; the others over all samples.
std::vector<InvarianceReport> check_pairwise_theorem(const FockSpace& space, const std::vector<GroupSample>& samples,
                                                     double pass_tol = 1e-9, double fail_fraction = 1e-2);

/// Production operator of the species named V, N, theta: invariant iff m_V = m_N + m_theta.
InvarianceReport check_mass_sum_rule(const FockSpace& space, const std::vector<GroupSample>& samples,
                                     const std::string& v, const std::string& n, const std::string& theta,
                                     double pass_tol = 1e-9, double fail_fraction = 1e-2);

struct CommutatorNorm {
  SparseOp commutator;
  double norm = 0.0;  // Frobenius
};

/// [O, N_total].
CommutatorNorm number_commutator(const SparseOp& o, const FockSpace& space);
/// [O, M_total].
CommutatorNorm mass_commutator(const SparseOp& o, const FockSpace& space);

/// Coefficient tensor after a rotation: positions mapped by R, spin indices contracted with
/// D^*(R^{-1}) on creation legs and D(R^{-1}) on annihilation legs.
OperatorPolynomial transform_polynomial(const OperatorPolynomial& p, const Rotation& R, const ModeLattice& lattice);

/// Max |C'(key) - C(key)| between the transformed and original canonical coefficients.
/// Throws NotGridCompatible for non-octahedral R.
CheckReport coefficient_covariance_check(const OperatorPolynomial& p, const Rotation& R, const ModeLattice& lattice,
                                         double tol);

}  // namespace gqft
