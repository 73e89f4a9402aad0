#pragma once

#include <Eigen/Core>
#include <optional>

#include "mosaic/core/se3.hpp"

namespace mosaic::core {

/// Pinhole camera model, no distortion.
struct Intrinsics {
  double fx = 0, fy = 0, cx = 0, cy = 0;
  int width = 0, height = 0;

  /// Ray through pixel (u, v) in camera coordinates, scaled so z == 1; a
  /// point at sensor depth d is d * unproject(u, v).
  Vec3 unproject(double u, double v) const {
    return {(u - cx) / fx, (v - cy) / fy, 1.0};
  }

  /// Pixel coordinates of a camera-frame point; empty when z <= 0.
  std::optional<Eigen::Vector2d> project(const Vec3& p) const {
    if (p.z() <= 0) return std::nullopt;
    return Eigen::Vector2d(fx * p.x() / p.z() + cx, fy * p.y() / p.z() + cy);
  }

  void validate() const;
};

}  // namespace mosaic::core
