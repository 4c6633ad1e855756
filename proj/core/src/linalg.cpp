#include "gqft/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "gqft/error.hpp"

namespace gqft {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::NotGridCompatible: return "NotGridCompatible";
    case ErrorCode::OffGridImage: return "OffGridImage";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::LatticeMismatch: return "LatticeMismatch";
    case ErrorCode::MissingAntiparticle: return "MissingAntiparticle";
    case ErrorCode::PartnerMassMismatch: return "PartnerMassMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

double max_abs(const SparseOp& op) {
  double m = 0.0;
  for (Eigen::Index k = 0; k < op.outerSize(); ++k)
    for (SparseOp::InnerIterator it(op, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double frobenius(const SparseOp& op) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < op.outerSize(); ++k)
    for (SparseOp::InnerIterator it(op, k); it; ++it) s += std::norm(it.value());
  return std::sqrt(s);
}

SparseOp sparse_identity(Eigen::Index dim) {
  SparseOp id(dim, dim);
  id.setIdentity();
  return id;
}

SparseOp graded_commutator(const SparseOp& a, const SparseOp& b, int sign) {
  SparseOp ab = a * b;
  SparseOp ba = b * a;
  return SparseOp(ab - static_cast<double>(sign) * ba);
}

SparseOp pruned(const SparseOp& op, double eps) {
  SparseOp out = op;
  out.prune([eps](Eigen::Index, Eigen::Index, const cplx& v) { return std::abs(v) > eps; });
  return out;
}

}  // namespace gqft
