#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace gqft {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using SparseOp = Eigen::SparseMatrix<cplx>;
using Triplet = Eigen::Triplet<cplx>;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Largest entry modulus; zero for an empty matrix.
double max_abs(const SparseOp& op);
double max_abs(const CMatrix& m);

/// Frobenius norm of a sparse operator.
double frobenius(const SparseOp& op);

SparseOp sparse_identity(Eigen::Index dim);

/// [A, B] - sign * B A with sign = +1 (commutator) or -1 (anticommutator).
SparseOp graded_commutator(const SparseOp& a, const SparseOp& b, int sign);

/// Drops entries whose modulus is below `eps`.
SparseOp pruned(const SparseOp& op, double eps = 0.0);

/// Dense Hermitian matrix function f(H) = V f(E) V^dagger.
template <typename F>
CMatrix hermitian_function(const Eigen::SelfAdjointEigenSolver<CMatrix>& eig, F&& f) {
  const auto& vals = eig.eigenvalues();
  CVector fv(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) fv(i) = f(vals(i));
  return eig.eigenvectors() * fv.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace gqft
