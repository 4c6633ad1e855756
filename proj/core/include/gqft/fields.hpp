#pragma once

#include <vector>

#include "gqft/check_report.hpp"
#include "gqft/fock.hpp"
#include "gqft/galilei.hpp"

namespace gqft {

/// Position x = (L / n) j on the periodic grid, j in [-h, h]^3, at time t.
struct GridPoint {
  IntVec3 j{0, 0, 0};
  double t = 0.0;
};

enum class FieldVariant {
  Annihilation,           // psi^-
  Creation,               // psi^+ = (psi^-)^dagger
  AntiparticleCreation,   // psi^{-c dagger}, built from the partner species
  General,                // xi psi^- + eta psi^{-c dagger}
};

const char* to_string(FieldVariant v);

struct FieldSpec {
  int species = 0;
  int two_lambda = 0;
  FieldVariant variant = FieldVariant::Annihilation;
  GridPoint x;
};

/// Index of the species whose `antiparticle_of` names `species`, or -1.
int antiparticle_partner(const ModeLattice& lattice, int species);

/// Throws MissingAntiparticle / PartnerMassMismatch when the variant needs a partner
/// that is absent or does not carry mass -m.
void require_partner(const ModeLattice& lattice, int species, FieldVariant variant);

/// Matrix of the field on the truncated space:
///   psi^-_lambda(x,t) = L^{-3/2} sum_p exp(+i(E t - p.x)/hbar) a(p, lambda),
///   psi^{-c dagger}_lambda = sum_mu (C^{-1})_{lambda mu} psi^+_{partner, mu}.
SparseOp realize_field(const FockSpace& space, const FieldSpec& f);
SparseOp annihilation_field(const FockSpace& space, int species, int two_lambda, const GridPoint& x);
SparseOp general_field(const FockSpace& space, int species, int two_lambda, const GridPoint& x);

/// sum_modes E(mode) a^dagger a.
SparseOp free_hamiltonian(const FockSpace& space);

/// Galilei element whose action permutes lattice modes exactly, with the
/// integer data that realizes it.
struct GridCompatibleElement {
  GalileiElement g;
  Eigen::Matrix3i rotation;       // signed permutation matrix of R
  IntVec3 translation{0, 0, 0};   // a = (L / n) translation
  std::vector<IntVec3> boost;     // per species: m v = (2 pi hbar / L) boost
};

/// Validates that R is octahedral, a lies on the position grid and m v lies on the
/// momentum lattice for every species. Throws NotGridCompatible otherwise.
GridCompatibleElement make_grid_compatible(const GalileiElement& g, const ModeLattice& lattice);

/// The 24 proper rotations of the cube, identity first.
std::vector<Rotation> octahedral_rotations();

/// Image of a mode under g: target mode index and amplitude of each spin component.
struct ModeImage {
  std::vector<std::pair<std::size_t, cplx>> terms;
};

/// U(g) a^dagger(p, lambda) U(g)^dagger
///   = exp(-i(E' b - p'.a)/hbar) sum_lambda' D_{lambda' lambda}(R) a^dagger(p', lambda'),
/// p' = R p + m v reduced onto the lattice, E' its lattice energy.
ModeImage mode_image(const GridCompatibleElement& g, const ModeLattice& lattice, std::size_t mode);

/// Second-quantized unitary; the vacuum is fixed and particle content per species is preserved.
SparseOp galilei_unitary(const GridCompatibleElement& g, const FockSpace& space);

/// Max |U(g2) U(g1) - exp(i zeta M_total / hbar) U(g2 g1)| over basis columns on which
/// no boost image wraps around the lattice.
CheckReport projective_composition_check(const GalileiElement& g2, const GalileiElement& g1,
                                         const FockSpace& space, double tol);

/// Columns whose occupied momenta, after the rotation and translation of g1, stay inside
/// the lattice under the boost of g2 (so no wrapped energy enters).
std::vector<Eigen::Index> non_wrapping_columns(const GridCompatibleElement& g1,
                                               const GridCompatibleElement& g2, const FockSpace& space);

enum class DInverseForm { Direct, Adjoint };

/// || U psi(x,t) U^dagger - prediction || with the law
///   psi^-, psi^{-c dagger}, general:  exp(+i m gamma / hbar) sum D_{lambda lambda'}(R^{-1}) psi_lambda'(x', t')
///   psi^+:                            exp(-i m gamma / hbar) sum D*_{lambda lambda'}(R^{-1}) psi_lambda'(x', t')
/// D(R^{-1}) is taken either directly or as (D(R)^dagger). Boosted elements require t = 0
/// (NotGridCompatible otherwise); OffGridImage if x' misses the grid.
CheckReport verify_field_transformation(const GridCompatibleElement& g, const FockSpace& space,
                                        const FieldSpec& f, double tol,
                                        DInverseForm form = DInverseForm::Direct);
/// Same with U(g) supplied by the caller.
CheckReport verify_field_transformation(const GridCompatibleElement& g, const SparseOp& u, const FockSpace& space,
                                        const FieldSpec& f, double tol, DInverseForm form = DInverseForm::Direct);

/// [F(x), G(y)^dagger]-/+ (or [F, G]-/+ when `dagger_second` is false) minus its expected
/// value c delta_{lambda lambda'} delta_{xy} (n/L)^3 I, with c = |xi|^2 - sign |eta|^2 for the
/// weights of F. Evaluated on sub-cap columns. sign = 0 picks it from the species statistics.
CheckReport equal_time_commutator(const FockSpace& space, const FieldSpec& f, const FieldSpec& g, int sign,
                                  double tol, bool dagger_second = true);

/// Residuals of U (psi + psi^dagger) U^dagger against the single-field law
/// exp(i m gamma / hbar) (psi + psi^dagger)(x'), evaluated at every grid point at t = 0.
/// `phase_scale` multiplies every mass phase; 0 is the test mode in which both laws coincide.
struct HermiticityReport {
  struct Point {
    IntVec3 j;
    double gamma = 0.0;
    double residual = 0.0;
    double bound = 0.0;   // 2 |sin(m gamma / hbar)| ||psi^+||_F
  };
  std::vector<Point> points;
  double separation = 0.0;
  double min_nonzero_gamma_residual = 0.0;
  double max_zero_gamma_residual = 0.0;
  double max_test_mode_residual = 0.0;
  bool passed = false;
};

HermiticityReport hermiticity_obstruction(const FockSpace& space, int species, const GalileiElement& boost,
                                          double separation, double tol);

/// Compares i hbar (psi(t+dt) - psi(t-dt)) / 2dt with [psi(t), H] for the Heisenberg field
/// psi(t) = exp(iHt/hbar) psi(0) exp(-iHt/hbar), at dt and dt/2.
struct EomReport {
  double residual_dt = 0.0;
  double residual_half = 0.0;
  double ratio = 0.0;
  double fitted_c = 0.0;
  bool exact = false;   // both residuals at rounding level
  bool passed = false;
};

EomReport equation_of_motion_check(const FockSpace& space, const FieldSpec& f, const SparseOp& H, double t,
                                   double dt, double tol);

}  // namespace gqft
