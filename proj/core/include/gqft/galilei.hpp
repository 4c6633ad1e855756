#pragma once

#include <Eigen/Geometry>

#include "gqft/linalg.hpp"

namespace gqft {

/// Proper rotation stored as an SU(2) element (unit quaternion). `q` and `-q`
/// are the same SO(3) rotation but distinct spinor rotations.
class Rotation {
 public:
  Rotation() : q_(Eigen::Quaterniond::Identity()) {}
  explicit Rotation(const Eigen::Quaterniond& q);

  static Rotation axis_angle(const Vec3& axis, double angle);

  const Eigen::Quaterniond& quaternion() const { return q_; }
  Mat3 matrix() const { return q_.toRotationMatrix(); }
  Vec3 apply(const Vec3& x) const { return q_ * x; }
  Rotation inverse() const { return Rotation(q_.conjugate()); }

  /// SU(2) product; renormalized to keep |q| = 1.
  Rotation operator*(const Rotation& rhs) const { return Rotation(q_ * rhs.q_); }

 private:
  Eigen::Quaterniond q_;
};

/// g = (b, a, v, R): time shift, space shift, boost velocity, rotation.
struct GalileiElement {
  double b = 0.0;
  Vec3 a = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  Rotation R;
};

struct SpaceTimePoint {
  Vec3 x = Vec3::Zero();
  double t = 0.0;
};

using HomogeneousMatrix = Eigen::Matrix<double, 5, 5>;

GalileiElement identity();

/// g2 * g1 = (b2 + b1, a2 + R2 a1 + b1 v2, v2 + R2 v1, R2 R1).
GalileiElement compose(const GalileiElement& g2, const GalileiElement& g1);

GalileiElement inverse(const GalileiElement& g);

/// x' = R x + v t + a, t' = t + b.
SpaceTimePoint act(const GalileiElement& g, const SpaceTimePoint& p);

/// gamma(g; x, t) = |v|^2 t / 2 + v . (R x)
double cocycle_gamma(const GalileiElement& g, const SpaceTimePoint& p);

/// Exponent zeta with U(g2) U(g1) = exp(i zeta / hbar) U(g2 g1) on the
/// one-particle representation of mass m:
///   zeta = -m (|v2|^2 b1 / 2 + v2 . R2 a1).
/// Satisfies m gamma(g2 g1; p) = m gamma(g1; p) + m gamma(g2; g1 p) + zeta.
double projective_phase(const GalileiElement& g2, const GalileiElement& g1, double m);

/// 5x5 matrix acting on the column (x, t, 1).
HomogeneousMatrix homogeneous_matrix(const GalileiElement& g);

/// Componentwise distance (quaternions compared up to the double-cover sign
/// only when `modulo_sign` is set).
double distance(const GalileiElement& g1, const GalileiElement& g2, bool modulo_sign = false);

}  // namespace gqft
