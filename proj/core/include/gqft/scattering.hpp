#pragma once

#include <vector>

#include "gqft/check_report.hpp"
#include "gqft/invariance.hpp"

namespace gqft {

struct QuadratureSpec {
  double step = 0.02;             // Simpson step in time
  double horizon_factor = 40.0;   // integrate to T = horizon_factor / epsilon

  void validate() const;
};

struct ModelSpec {
  ModeLattice lattice;
  OperatorPolynomial interaction;  // Hermitian-flagged, scaled by `coupling`
  double coupling = 0.1;
  std::vector<double> abel_epsilons{0.5, 0.25, 0.125};
  QuadratureSpec quadrature;
  double convergence_rel = 1e-2;

  void validate() const;
};

/// Three Bose scalars theta(m=1), N(m=1), V(m=2) with g sum_x psi^+_V psi_N psi_theta + h.c.
ModelSpec gali_lee_model(double coupling = 0.1, int n_per_axis = 3, int n_max = 2, double mass_v = 2.0);

/// Eigen-decomposition of H restricted to each connected block of its sparsity pattern.
struct SpectralBlock {
  std::vector<Eigen::Index> indices;
  Eigen::VectorXd energies;
  CMatrix vectors;  // columns are eigenvectors in the block basis
};

struct BlockSpectrum {
  Eigen::Index dim = 0;
  std::vector<SpectralBlock> blocks;

  std::size_t largest_block() const;
};

BlockSpectrum block_spectrum(const SparseOp& h);

struct Model {
  FockSpace space;
  SparseOp H0;
  SparseOp V;
  SparseOp H;
  Eigen::VectorXd free_energies;  // diagonal of H0
  BlockSpectrum spectrum;
};

/// Realizes H = H0 + coupling * V and its block spectrum. Throws InvalidArgument when H
/// is not Hermitian within 1e-11.
Model build_model(const ModelSpec& spec);

/// Omega(t) = exp(iHt/hbar) exp(-iH0 t/hbar).
SparseOp moller(const Model& model, double t);
/// U(t, t0) = Omega(t)^dagger Omega(t0).
SparseOp evolution(const Model& model, double t, double t0);

/// Simpson value of integral_0^T exp((-epsilon + i omega) u) du, summed in closed form
/// over the nodes.
cplx simpson_exponential(double epsilon, double omega, const QuadratureSpec& q);
/// Abel weight epsilon int_0^inf e^{-epsilon u} e^{i omega u} du with epsilon replaced by the
/// reciprocal of the same quadrature of e^{-epsilon u}, so that the weight of omega = 0 is 1.
cplx abel_weight(double epsilon, double omega, const QuadratureSpec& q);

struct EpsilonStage {
  double epsilon = 0.0;
  SparseOp S;
  SparseOp omega_in;
  double unitarity_defect = 0.0;   // max |S^dag S - I| on the converged subspace
  double intertwining = 0.0;       // max column norm of H Omega_in - Omega_in H0
  double energy_commutator = 0.0;  // max |[S, H0]| on the converged subspace
};

struct SMatrixResult {
  SparseOp S;  // finest epsilon
  std::vector<EpsilonStage> stages;
  std::vector<Eigen::Index> converged;    // columns stable between the two finest epsilons
  std::vector<Eigen::Index> unconverged;
  std::size_t unconverged_entries = 0;
  bool flags_stable = true;               // same unconverged columns for the previous pair
  double unitarity_defect = 0.0;
  bool defect_monotone = false;
  bool intertwining_monotone = false;
  bool energy_commutator_monotone = false;
};

SMatrixResult s_matrix(const Model& model, const ModelSpec& spec);

/// out<beta|alpha>in computed from the vectors Omega_out|beta> and Omega_in|alpha>.
cplx s_element_by_states(const Model& model, double epsilon, const QuadratureSpec& q, Eigen::Index beta,
                         Eigen::Index alpha);

struct SuperselectionReport {
  double max_off_block = 0.0;     // entries joining different total-mass sectors
  double number_commutator = 0.0; // ||[O, N]||_F
  std::size_t sectors = 0;
};

SuperselectionReport superselection_report(const SparseOp& o, const FockSpace& space);

/// max |<alpha|Omega^dag Omega|beta> - delta| over the converged subspace for the in and
/// out operators at the finest epsilon, plus the vacuum overlap.
struct NormalizationReport {
  double in_defect = 0.0;
  double out_defect = 0.0;
  double vacuum_overlap = 0.0;
  bool passed = false;
};

NormalizationReport asymptotic_normalization_check(const Model& model, const ModelSpec& spec,
                                                   const SMatrixResult& result, double tol);

}  // namespace gqft
