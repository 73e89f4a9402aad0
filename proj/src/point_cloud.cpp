#include "mosaic/core/point_cloud.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "mosaic/core/knn_grid.hpp"

namespace mosaic::core {

PointCloud backproject(const RgbdFrame& frame, int stride) {
  if (stride < 1) throw std::invalid_argument("backproject: stride must be >= 1");
  PointCloud cloud;
  const auto& K = frame.intrinsics;
  for (int v = 0; v < frame.depth.height; v += stride) {
    for (int u = 0; u < frame.depth.width; u += stride) {
      const double d = frame.depth.at(u, v);
      if (d <= 0.0) continue;
      cloud.points.push_back(d * K.unproject(u, v));
      cloud.colors.push_back(frame.color.at(u, v).cast<double>());
    }
  }
  return cloud;
}

PointCloud transformed(const PointCloud& cloud, const Pose& pose) {
  PointCloud out = cloud;
  for (auto& p : out.points) p = pose.apply(p);
  for (auto& n : out.normals) n = pose.rotation * n;
  return out;
}

PointCloud voxel_downsample(const PointCloud& cloud, double voxel) {
  struct Acc {
    Vec3 p = Vec3::Zero();
    Vec3 c = Vec3::Zero();
    Vec3 n = Vec3::Zero();
    int count = 0;
  };
  auto key = [voxel](const Vec3& p) {
    const int64_t off = 1 << 20;
    auto q = [&](double x) {
      return static_cast<int64_t>(std::floor(x / voxel)) + off;
    };
    return (q(p.x()) << 42) | (q(p.y()) << 21) | q(p.z());
  };
  std::unordered_map<int64_t, Acc> bins;
  // Keep first-seen order for reproducible output ordering.
  std::vector<int64_t> order;
  const bool with_colors = !cloud.colors.empty();
  const bool with_normals = cloud.has_normals();
  for (size_t i = 0; i < cloud.size(); ++i) {
    const int64_t k = key(cloud.points[i]);
    auto [it, inserted] = bins.try_emplace(k);
    if (inserted) order.push_back(k);
    it->second.p += cloud.points[i];
    if (with_colors) it->second.c += cloud.colors[i];
    if (with_normals) it->second.n += cloud.normals[i];
    it->second.count++;
  }
  PointCloud out;
  out.points.reserve(order.size());
  for (int64_t k : order) {
    const Acc& a = bins[k];
    out.points.push_back(a.p / a.count);
    if (with_colors) out.colors.push_back(a.c / a.count);
    if (with_normals) {
      Vec3 n = a.n;
      const double len = n.norm();
      out.normals.push_back(len > 1e-12 ? Vec3(n / len) : Vec3(0, 0, -1));
    }
  }
  return out;
}

void estimate_normals(PointCloud& cloud, int k) {
  if (k < 3) throw std::invalid_argument("estimate_normals: k must be >= 3");
  if (cloud.size() < static_cast<size_t>(k))
    throw std::invalid_argument("estimate_normals: cloud smaller than k");

  // Cell size tuned to typical neighborhoods: median spacing would be ideal,
  // a bounding-box heuristic is close enough for the query pattern.
  Vec3 lo = cloud.points[0], hi = cloud.points[0];
  for (const auto& p : cloud.points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double extent = std::max((hi - lo).maxCoeff(), 1e-6);
  const double cell =
      std::max(extent / std::cbrt(static_cast<double>(cloud.size())) * 2.0, 1e-6);
  KnnGrid grid(cloud.points, cell);

  cloud.normals.resize(cloud.size());
  for (size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = cloud.points[i];
    const auto nbrs = grid.knn(p, k);
    Vec3 mean = Vec3::Zero();
    for (int j : nbrs) mean += cloud.points[j];
    mean /= static_cast<double>(nbrs.size());
    Mat3 cov = Mat3::Zero();
    for (int j : nbrs) {
      const Vec3 d = cloud.points[j] - mean;
      cov += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
    const Vec3 evals = eig.eigenvalues();  // ascending
    Vec3 n;
    if (evals(1) <= 1e-9 * std::max(evals(2), 1e-300)) {
      // Collinear neighborhood: viewing direction fallback.
      n = p.norm() > 1e-12 ? Vec3(-p.normalized()) : Vec3(0, 0, -1);
    } else {
      n = eig.eigenvectors().col(0);
    }
    if (n.dot(-p) < 0) n = -n;
    cloud.normals[i] = n;
  }
}

}  // namespace mosaic::core
