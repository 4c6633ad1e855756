#pragma once

#include <array>

#include "gqft/galilei.hpp"
#include "gqft/linalg.hpp"

namespace gqft {

/// Spin s = two_s / 2. Basis index i in [0, 2s] carries projection lambda = -s + i.
struct SpinLabel {
  int two_s = 0;

  int dim() const { return two_s + 1; }
  double value() const { return 0.5 * two_s; }
  /// Twice the projection of basis index i.
  int two_lambda(int i) const { return -two_s + 2 * i; }
  int index_of(int two_lambda) const { return (two_lambda + two_s) / 2; }

  friend bool operator==(SpinLabel, SpinLabel) = default;
};

struct WignerD {
  SpinLabel s;
  CMatrix m;
};

/// Angular-momentum matrices J_x, J_y, J_z (including the factor hbar).
std::array<CMatrix, 3> spin_matrices(SpinLabel s, double hbar = 1.0);

/// D^(s)(R) = exp(-i angle n.J / hbar) evaluated on the SU(2) element of R.
WignerD wigner_d(SpinLabel s, const Rotation& R);

/// Antidiagonal C with C_{lambda, -lambda} = (-1)^(s - lambda), so that
/// D(R)^* = C D(R) C^{-1}.
CMatrix conjugation_matrix(SpinLabel s);

}  // namespace gqft
