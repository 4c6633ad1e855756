#pragma once

#include <array>
#include <string>
#include <vector>

#include "gqft/linalg.hpp"
#include "gqft/spin.hpp"

namespace gqft {

/// One-particle realization parameters: labels [m, W, s] plus oscillator truncation.
struct AlgebraConfig {
  double m = 1.0;
  double W = 0.0;
  SpinLabel s{};
  int n_levels = 12;
  double interior_fraction = 0.5;
  double hbar = 1.0;

  void validate() const;
};

/// {H, P_i, K_i, J_i, M} as sparse matrices on (levels^3) (x) spin.
struct GeneratorSet {
  AlgebraConfig cfg;
  SparseOp H;
  std::array<SparseOp, 3> P;
  std::array<SparseOp, 3> K;
  std::array<SparseOp, 3> J;
  SparseOp M;
  std::array<SparseOp, 3> X;  // position, kept for diagnostics
  std::array<SparseOp, 3> S;  // spin part of J

  Eigen::Index dim() const { return H.rows(); }
  /// Basis indices whose oscillator levels all lie below interior_fraction * n_levels.
  std::vector<Eigen::Index> interior_indices() const;
  /// All generators in the fixed order H, P1..P3, K1..K3, J1..J3, M.
  std::vector<std::pair<std::string, const SparseOp*>> named() const;
};

GeneratorSet build_generators(const AlgebraConfig& cfg);

struct BracketResidual {
  std::string name;       // e.g. "[K1,P1]"
  std::string family;     // e.g. "[K_i,P_j]"
  double interior = 0.0;  // max entry of the residual on the interior block
  double probe = 0.0;     // |residual * phi| for a fixed low-energy probe state
};

struct BracketReport {
  std::vector<BracketResidual> residuals;
  double tolerance = 0.0;
  bool passed = false;

  double max_interior() const;
  double max_probe() const;
  /// Max interior residual per bracket family, in table order.
  std::vector<std::pair<std::string, double>> by_family() const;
};

/// Residual of [A, B] - C restricted to the interior block.
double interior_residual(const GeneratorSet& g, const SparseOp& residual);

/// Checks the full bracket table. Throws TruncationTooSmall when the interior is empty.
BracketReport check_brackets(const GeneratorSet& g, double tol);

struct Casimirs {
  SparseOp Q1, Q2, Q3;
};

/// Q1 = M, Q2 = 2 M H - P^2, Q3 = (M J - K x P)^2.
Casimirs casimirs(const GeneratorSet& g);

/// [Q_k, G] for every generator G on the interior block.
BracketReport check_centrality(const GeneratorSet& g, double tol);

/// Jacobi identity over `triples` random generator triples drawn with `seed`.
double jacobi_residual(const GeneratorSet& g, int triples, unsigned long long seed);

}  // namespace gqft
