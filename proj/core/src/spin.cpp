#include "gqft/spin.hpp"

#include <cmath>

#include "gqft/error.hpp"

namespace gqft {

std::array<CMatrix, 3> spin_matrices(SpinLabel s, double hbar) {
  if (s.two_s < 0) throw Error(ErrorCode::InvalidArgument, "negative spin");
  const int d = s.dim();
  const double sv = s.value();
  CMatrix jp = CMatrix::Zero(d, d);
  CMatrix jz = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double lam = 0.5 * s.two_lambda(i);
    jz(i, i) = hbar * lam;
    if (i + 1 < d) jp(i + 1, i) = hbar * std::sqrt(sv * (sv + 1.0) - lam * (lam + 1.0));
  }
  CMatrix jm = jp.adjoint();
  CMatrix jx = 0.5 * (jp + jm);
  CMatrix jy = (jp - jm) / (2.0 * kI);
  return {jx, jy, jz};
}

WignerD wigner_d(SpinLabel s, const Rotation& R) {
  const auto& q = R.quaternion();
  const Vec3 im(q.x(), q.y(), q.z());
  const double sin_half = im.norm();
  const int d = s.dim();
  if (sin_half < 1e-300) {
    // q = +-1: identity or a 2 pi rotation.
    const double sign = (q.w() < 0.0 && (s.two_s % 2 == 1)) ? -1.0 : 1.0;
    return {s, sign * CMatrix::Identity(d, d)};
  }
  const double angle = 2.0 * std::atan2(sin_half, q.w());
  const Vec3 n = im / sin_half;
  const auto j = spin_matrices(s, 1.0);
  const CMatrix nj = n.x() * j[0] + n.y() * j[1] + n.z() * j[2];
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(nj);
  return {s, hermitian_function(eig, [angle](double e) { return std::exp(-kI * angle * e); })};
}

CMatrix conjugation_matrix(SpinLabel s) {
  const int d = s.dim();
  CMatrix c = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    // s - lambda = (two_s - two_lambda) / 2 = two_s - i
    const int exponent = s.two_s - i;
    c(i, d - 1 - i) = (exponent % 2 == 0) ? 1.0 : -1.0;
  }
  return c;
}

}  // namespace gqft
