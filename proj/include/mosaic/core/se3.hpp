#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace mosaic::core {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Tangent-space parameterization of a rigid transform: (omega, v) with the
/// rotational part first.
using Twist = Eigen::Matrix<double, 6, 1>;

/// Rigid transform in SE(3): x_out = rotation * x_in + translation.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& x) const { return rotation * x + translation; }

  static Pose identity() { return {}; }
};

Mat3 skew(const Vec3& w);

Pose compose(const Pose& a, const Pose& b);
Pose inverse(const Pose& p);

/// Exponential map. Rodrigues for the rotation; second-order Taylor series
/// below angle 1e-8.
Pose se3_exp(const Twist& xi);

/// Logarithm map; valid for rotation angles < pi.
Twist se3_log(const Pose& p);

double rotation_angle(const Mat3& r);

/// Frobenius deviation from orthonormality plus determinant error; used by
/// validation checks.
double orthonormality_error(const Mat3& r);

/// Nearest rotation matrix (polar decomposition via SVD).
Mat3 orthonormalized(const Mat3& r);

}  // namespace mosaic::core
