#pragma once

#include <vector>

#include "mosaic/core/frame.hpp"
#include "mosaic/core/se3.hpp"

namespace mosaic::core {

struct PointCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> colors;   // values in [0,1]; may be empty
  std::vector<Vec3> normals;  // unit length; empty when not estimated

  size_t size() const { return points.size(); }
  bool has_normals() const { return !normals.empty(); }
};

/// One point per valid-depth pixel sampled at `stride`; colors copied from
/// the image. Points are in the camera frame.
PointCloud backproject(const RgbdFrame& frame, int stride = 1);

PointCloud transformed(const PointCloud& cloud, const Pose& pose);

/// Voxel-average downsampling. Normals, when present, are averaged and
/// renormalized.
PointCloud voxel_downsample(const PointCloud& cloud, double voxel);

/// Per-point normals from the smallest eigenvector of the k-NN covariance,
/// oriented toward the sensor origin. Degenerate neighborhoods fall back to
/// the viewing direction.
void estimate_normals(PointCloud& cloud, int k);

}  // namespace mosaic::core
