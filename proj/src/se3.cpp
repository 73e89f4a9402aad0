#include "mosaic/core/se3.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace mosaic::core {

Mat3 skew(const Vec3& w) {
  Mat3 s;
  s << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
  return s;
}

Pose compose(const Pose& a, const Pose& b) {
  return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

Pose inverse(const Pose& p) {
  Mat3 rt = p.rotation.transpose();
  return {rt, -(rt * p.translation)};
}

Pose se3_exp(const Twist& xi) {
  if (!xi.allFinite()) throw std::invalid_argument("se3_exp: non-finite twist");
  const Vec3 w = xi.head<3>();
  const Vec3 v = xi.tail<3>();
  const double theta = w.norm();
  const Mat3 wx = skew(w);
  Mat3 r, vmat;
  if (theta < 1e-8) {
    r = Mat3::Identity() + wx + 0.5 * wx * wx;
    vmat = Mat3::Identity() + 0.5 * wx + (1.0 / 6.0) * wx * wx;
  } else {
    const double t2 = theta * theta;
    r = Mat3::Identity() + (std::sin(theta) / theta) * wx +
        ((1.0 - std::cos(theta)) / t2) * wx * wx;
    vmat = Mat3::Identity() + ((1.0 - std::cos(theta)) / t2) * wx +
           ((theta - std::sin(theta)) / (t2 * theta)) * wx * wx;
  }
  return {r, vmat * v};
}

double rotation_angle(const Mat3& r) {
  const double c = std::clamp((r.trace() - 1.0) * 0.5, -1.0, 1.0);
  return std::acos(c);
}

Twist se3_log(const Pose& p) {
  const Mat3& r = p.rotation;
  const double theta = rotation_angle(r);
  Vec3 w;
  if (theta < 1e-8) {
    w = 0.5 * Vec3(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  } else if (theta > M_PI - 1e-6) {
    // Near pi the antisymmetric part vanishes; recover the axis from the
    // symmetric part R + I = 2(cos(theta) I + (1-cos) a a^T) + ...
    Mat3 m = 0.5 * (r + Mat3::Identity());
    int k = 0;
    m.diagonal().maxCoeff(&k);
    Vec3 axis = m.col(k) / std::sqrt(std::max(m(k, k), 1e-12));
    axis.normalize();
    // Fix the sign using the antisymmetric part.
    Vec3 s(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
    if (axis.dot(s) < 0) axis = -axis;
    w = theta * axis;
  } else {
    const double f = theta / (2.0 * std::sin(theta));
    w = f * Vec3(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  }

  const Mat3 wx = skew(w);
  Mat3 vinv;
  if (theta < 1e-8) {
    vinv = Mat3::Identity() - 0.5 * wx + (1.0 / 12.0) * wx * wx;
  } else {
    const double t2 = theta * theta;
    const double coef =
        (1.0 - theta * std::cos(theta * 0.5) / (2.0 * std::sin(theta * 0.5))) / t2;
    vinv = Mat3::Identity() - 0.5 * wx + coef * wx * wx;
  }
  Twist xi;
  xi.head<3>() = w;
  xi.tail<3>() = vinv * p.translation;
  return xi;
}

double orthonormality_error(const Mat3& r) {
  const double frob = (r.transpose() * r - Mat3::Identity()).norm();
  return frob + std::abs(r.determinant() - 1.0);
}

Mat3 orthonormalized(const Mat3& r) {
  Eigen::JacobiSVD<Mat3> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  Mat3 v = svd.matrixV();
  Mat3 d = Mat3::Identity();
  d(2, 2) = (u * v.transpose()).determinant() < 0 ? -1.0 : 1.0;
  return u * d * v.transpose();
}

}  // namespace mosaic::core
