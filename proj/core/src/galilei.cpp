#include "gqft/galilei.hpp"

#include <algorithm>
#include <cmath>

#include "gqft/error.hpp"

namespace gqft {

Rotation::Rotation(const Eigen::Quaterniond& q) : q_(q) {
  const double n = q_.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw Error(ErrorCode::InvalidArgument, "rotation quaternion must be finite and nonzero");
  q_.coeffs() /= n;
}

Rotation Rotation::axis_angle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "rotation axis must be nonzero");
  const Vec3 u = axis / n;
  const double s = std::sin(0.5 * angle);
  return Rotation(Eigen::Quaterniond(std::cos(0.5 * angle), s * u.x(), s * u.y(), s * u.z()));
}

GalileiElement identity() { return GalileiElement{}; }

GalileiElement compose(const GalileiElement& g2, const GalileiElement& g1) {
  GalileiElement g;
  g.b = g2.b + g1.b;
  g.a = g2.a + g2.R.apply(g1.a) + g1.b * g2.v;
  g.v = g2.v + g2.R.apply(g1.v);
  g.R = g2.R * g1.R;
  return g;
}

GalileiElement inverse(const GalileiElement& g) {
  const Rotation rinv = g.R.inverse();
  GalileiElement out;
  out.b = -g.b;
  out.a = -rinv.apply(g.a - g.b * g.v);
  out.v = -rinv.apply(g.v);
  out.R = rinv;
  return out;
}

SpaceTimePoint act(const GalileiElement& g, const SpaceTimePoint& p) {
  return {g.R.apply(p.x) + g.v * p.t + g.a, p.t + g.b};
}

double cocycle_gamma(const GalileiElement& g, const SpaceTimePoint& p) {
  return 0.5 * g.v.squaredNorm() * p.t + g.v.dot(g.R.apply(p.x));
}

double projective_phase(const GalileiElement& g2, const GalileiElement& g1, double m) {
  return -m * (0.5 * g2.v.squaredNorm() * g1.b + g2.v.dot(g2.R.apply(g1.a)));
}

HomogeneousMatrix homogeneous_matrix(const GalileiElement& g) {
  HomogeneousMatrix h = HomogeneousMatrix::Identity();
  h.block<3, 3>(0, 0) = g.R.matrix();
  h.block<3, 1>(0, 3) = g.v;
  h.block<3, 1>(0, 4) = g.a;
  h(3, 4) = g.b;
  return h;
}

double distance(const GalileiElement& g1, const GalileiElement& g2, bool modulo_sign) {
  double d = std::abs(g1.b - g2.b);
  d = std::max(d, (g1.a - g2.a).cwiseAbs().maxCoeff());
  d = std::max(d, (g1.v - g2.v).cwiseAbs().maxCoeff());
  const auto& c1 = g1.R.quaternion().coeffs();
  const auto& c2 = g2.R.quaternion().coeffs();
  double dq = (c1 - c2).cwiseAbs().maxCoeff();
  if (modulo_sign) dq = std::min(dq, (c1 + c2).cwiseAbs().maxCoeff());
  return std::max(d, dq);
}

}  // namespace gqft
