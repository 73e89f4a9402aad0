#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mosaic/core/se3.hpp"

namespace mosaic::core {

/// Uniform voxel hash over a fixed point set, for bounded-radius nearest
/// neighbor and k-NN queries. Cells are cubes of side `cell`.
class KnnGrid {
 public:
  KnnGrid() = default;
  KnnGrid(std::vector<Vec3> points, double cell);

  /// Index of the nearest point within `radius`, -1 if none.
  int nearest_within(const Vec3& query, double radius) const;

  /// Indices of the k nearest points (fewer if the set is smaller). When
  /// `exclude` >= 0 that index is skipped.
  std::vector<int> knn(const Vec3& query, int k, int exclude = -1) const;

  const std::vector<Vec3>& points() const { return points_; }
  size_t size() const { return points_.size(); }

 private:
  int64_t key(int x, int y, int z) const;
  void cell_of(const Vec3& p, int& x, int& y, int& z) const;

  std::vector<Vec3> points_;
  double cell_ = 1.0;
  std::unordered_map<int64_t, std::vector<int>> cells_;
};

}  // namespace mosaic::core
