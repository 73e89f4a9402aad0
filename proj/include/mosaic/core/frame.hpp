#pragma once

#include <Eigen/Core>
#include <vector>

#include "mosaic/core/camera.hpp"

namespace mosaic::core {

/// Interleaved RGB image, values in [0, 1].
struct ImageRgb {
  int width = 0, height = 0;
  std::vector<float> data;  // 3 * width * height

  ImageRgb() = default;
  ImageRgb(int w, int h) : width(w), height(h), data(3 * w * h, 0.f) {}

  Eigen::Vector3f at(int u, int v) const {
    const float* p = &data[3 * (static_cast<size_t>(v) * width + u)];
    return {p[0], p[1], p[2]};
  }
  void set(int u, int v, const Eigen::Vector3f& c) {
    float* p = &data[3 * (static_cast<size_t>(v) * width + u)];
    p[0] = c.x();
    p[1] = c.y();
    p[2] = c.z();
  }
};

/// Depth in meters; 0 marks an invalid measurement.
struct DepthMap {
  int width = 0, height = 0;
  std::vector<double> data;

  DepthMap() = default;
  DepthMap(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h, 0.0) {}

  double at(int u, int v) const { return data[static_cast<size_t>(v) * width + u]; }
  void set(int u, int v, double d) { data[static_cast<size_t>(v) * width + u] = d; }
};

struct RgbdFrame {
  double timestamp = 0.0;
  ImageRgb color;
  DepthMap depth;
  Intrinsics intrinsics;

  bool depth_valid(int u, int v) const { return depth.at(u, v) > 0.0; }

  /// Checks the value invariants (finite nonnegative depth, colors in [0,1],
  /// consistent shapes). Throws std::invalid_argument on violation.
  void validate() const;
};

}  // namespace mosaic::core
