#include "mosaic/core/knn_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mosaic::core {

KnnGrid::KnnGrid(std::vector<Vec3> points, double cell)
    : points_(std::move(points)), cell_(cell) {
  for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
    int x, y, z;
    cell_of(points_[i], x, y, z);
    cells_[key(x, y, z)].push_back(i);
  }
}

int64_t KnnGrid::key(int x, int y, int z) const {
  // 21 bits per axis, offset to keep indices positive.
  const int64_t off = 1 << 20;
  return ((static_cast<int64_t>(x) + off) << 42) |
         ((static_cast<int64_t>(y) + off) << 21) | (static_cast<int64_t>(z) + off);
}

void KnnGrid::cell_of(const Vec3& p, int& x, int& y, int& z) const {
  x = static_cast<int>(std::floor(p.x() / cell_));
  y = static_cast<int>(std::floor(p.y() / cell_));
  z = static_cast<int>(std::floor(p.z() / cell_));
}

int KnnGrid::nearest_within(const Vec3& query, double radius) const {
  int cx, cy, cz;
  cell_of(query, cx, cy, cz);
  const int rmax = static_cast<int>(std::ceil(radius / cell_)) + 1;
  int best = -1;
  double best_d2 = radius * radius;
  for (int ring = 0; ring <= rmax; ++ring) {
    // Points in unvisited rings are at least (ring - 1) * cell away.
    if (best >= 0) {
      const double bound = (ring - 1) * cell_;
      if (bound > 0 && best_d2 <= bound * bound) break;
    }
    for (int dx = -ring; dx <= ring; ++dx)
      for (int dy = -ring; dy <= ring; ++dy)
        for (int dz = -ring; dz <= ring; ++dz) {
          if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != ring) continue;
          auto it = cells_.find(key(cx + dx, cy + dy, cz + dz));
          if (it == cells_.end()) continue;
          for (int i : it->second) {
            const double d2 = (points_[i] - query).squaredNorm();
            if (d2 < best_d2 || (d2 == best_d2 && best >= 0 && i < best)) {
              best_d2 = d2;
              best = i;
            }
          }
        }
  }
  return best;
}

std::vector<int> KnnGrid::knn(const Vec3& query, int k, int exclude) const {
  int cx, cy, cz;
  cell_of(query, cx, cy, cz);
  std::vector<std::pair<double, int>> cand;
  const int hard_cap = 64;  // never expand beyond this many rings
  for (int ring = 0; ring <= hard_cap; ++ring) {
    for (int dx = -ring; dx <= ring; ++dx)
      for (int dy = -ring; dy <= ring; ++dy)
        for (int dz = -ring; dz <= ring; ++dz) {
          if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != ring) continue;
          auto it = cells_.find(key(cx + dx, cy + dy, cz + dz));
          if (it == cells_.end()) continue;
          for (int i : it->second) {
            if (i == exclude) continue;
            cand.emplace_back((points_[i] - query).squaredNorm(), i);
          }
        }
    if (static_cast<int>(cand.size()) >= k) {
      // kth candidate distance must not exceed the guaranteed-searched radius.
      std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end());
      const double kth = std::sqrt(cand[k - 1].first);
      if (kth <= ring * cell_ || static_cast<int>(cand.size()) == static_cast<int>(points_.size()) - (exclude >= 0 ? 1 : 0))
        break;
    }
    if (cand.size() + 1 >= points_.size() && ring > 0) break;
  }
  const int n = std::min<int>(k, static_cast<int>(cand.size()));
  std::partial_sort(cand.begin(), cand.begin() + n, cand.end());
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = cand[i].second;
  return out;
}

}  // namespace mosaic::core
