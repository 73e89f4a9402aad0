#include "mosaic/dataset/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mosaic/core/errors.hpp"

namespace mosaic::dataset {

using core::Vec3;

Eigen::Vector3f SyntheticScene::surface_color(const Vec3& p) const {
  const double c = checker_cell;
  const int parity = (static_cast<int>(std::floor(p.x() / c)) +
                      static_cast<int>(std::floor(p.y() / c)) +
                      static_cast<int>(std::floor(p.z() / c))) &
                     1;
  const Eigen::Vector3d base =
      parity ? Eigen::Vector3d(0.78, 0.70, 0.62) : Eigen::Vector3d(0.25, 0.32, 0.40);
  // Low-frequency smooth component keeps a nonzero photometric gradient
  // inside checker panels.
  const Eigen::Vector3d smooth(
      0.5 + 0.5 * std::sin(1.3 * p.x() + 0.7 * p.y() + 0.4),
      0.5 + 0.5 * std::sin(1.1 * p.y() + 0.5 * p.z() + 1.9),
      0.5 + 0.5 * std::sin(0.9 * p.z() + 0.6 * p.x() + 3.1));
  Eigen::Vector3d col = 0.55 * base + 0.45 * smooth;
  return col.cwiseMax(0.0).cwiseMin(1.0).cast<float>();
}

double SyntheticScene::surface_distance(const Vec3& p) const {
  // Signed distance to the box boundary, reported as absolute distance.
  const Vec3 center = 0.5 * (room_min + room_max);
  const Vec3 half = 0.5 * (room_max - room_min);
  const Vec3 q = (p - center).cwiseAbs() - half;
  const double outside = q.cwiseMax(0.0).norm();
  const double inside = std::min(q.maxCoeff(), 0.0);
  return std::abs(outside + inside);
}

void SyntheticScene::validate() const {
  intrinsics.validate();
  if (!((room_max - room_min).minCoeff() > 0))
    throw ConfigError("synthetic scene: empty room");
  if (trajectory.empty()) throw ConfigError("synthetic scene: empty trajectory");
  for (const auto& pose : trajectory) {
    const Vec3& c = pose.translation;
    if ((c - room_min).minCoeff() <= 0 || (room_max - c).minCoeff() <= 0)
      throw ConfigError("synthetic scene: trajectory leaves the room");
  }
}

std::vector<core::Pose> make_trajectory(const std::vector<Vec3>& waypoints, int frames,
                                        const Vec3& look_dir, bool use_look_at,
                                        const Vec3& look_at) {
  if (waypoints.empty() || frames < 1)
    throw ConfigError("trajectory needs waypoints and frames >= 1");
  // Arc-length parameterization over the polyline.
  std::vector<double> cum{0.0};
  for (size_t i = 1; i < waypoints.size(); ++i)
    cum.push_back(cum.back() + (waypoints[i] - waypoints[i - 1]).norm());
  const double total = cum.back();

  std::vector<core::Pose> poses;
  for (int f = 0; f < frames; ++f) {
    const double s = frames == 1 ? 0.0 : total * f / (frames - 1);
    Vec3 position = waypoints.back();
    for (size_t i = 1; i < waypoints.size(); ++i) {
      if (s <= cum[i] || i + 1 == waypoints.size()) {
        const double seg = cum[i] - cum[i - 1];
        const double a = seg > 1e-12 ? std::clamp((s - cum[i - 1]) / seg, 0.0, 1.0) : 0.0;
        position = (1 - a) * waypoints[i - 1] + a * waypoints[i];
        break;
      }
    }
    Vec3 forward = use_look_at ? Vec3(look_at - position) : look_dir;
    if (forward.norm() < 1e-12) forward = Vec3(1, 0, 0);
    forward.normalize();
    // Optical convention: camera z forward, x right, y down; world +z up.
    Vec3 up(0, 0, 1);
    if (std::abs(forward.dot(up)) > 0.999) up = Vec3(0, 1, 0);
    const Vec3 right = forward.cross(up).normalized();
    const Vec3 down = forward.cross(right).normalized();
    core::Mat3 r;
    r.col(0) = right;
    r.col(1) = down;
    r.col(2) = forward;
    poses.push_back({r, position});
  }
  return poses;
}

SyntheticScene load_scene(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DatasetError("cannot open scene file: " + file.string());
  SyntheticScene scene;
  std::vector<Vec3> waypoints;
  Vec3 look_dir(1, 0, 0), look_at = Vec3::Zero();
  bool use_look_at = false;
  int frames = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    auto want3 = [&](Vec3& v) {
      if (!(ss >> v.x() >> v.y() >> v.z()))
        throw ConfigError("scene file line " + std::to_string(lineno) + ": expected 3 numbers");
    };
    if (key == "room_min") {
      want3(scene.room_min);
    } else if (key == "room_max") {
      want3(scene.room_max);
    } else if (key == "checker_cell") {
      ss >> scene.checker_cell;
    } else if (key == "frames") {
      ss >> frames;
    } else if (key == "waypoint") {
      Vec3 w;
      want3(w);
      waypoints.push_back(w);
    } else if (key == "look_dir") {
      want3(look_dir);
      use_look_at = false;
    } else if (key == "look_at") {
      want3(look_at);
      use_look_at = true;
    } else if (key == "intrinsics") {
      auto& k = scene.intrinsics;
      if (!(ss >> k.fx >> k.fy >> k.cx >> k.cy >> k.width >> k.height))
        throw ConfigError("scene file line " + std::to_string(lineno) +
                          ": intrinsics needs fx fy cx cy width height");
    } else {
      throw ConfigError("scene file line " + std::to_string(lineno) + ": unknown key '" +
                        key + "'");
    }
  }
  if (frames < 1) throw ConfigError("scene file: missing frames");
  scene.trajectory = make_trajectory(waypoints, frames, look_dir, use_look_at, look_at);
  scene.validate();
  return scene;
}

core::RgbdFrame render_synthetic(const SyntheticScene& scene, size_t frame_idx) {
  if (frame_idx >= scene.trajectory.size())
    throw std::out_of_range("render_synthetic: frame index out of range");
  const core::Pose& pose = scene.trajectory[frame_idx];
  const Vec3& origin = pose.translation;
  if ((origin - scene.room_min).minCoeff() <= 0 ||
      (scene.room_max - origin).minCoeff() <= 0)
    throw ConfigError("render_synthetic: camera outside the room");

  const auto& K = scene.intrinsics;
  core::RgbdFrame frame;
  frame.timestamp = static_cast<double>(frame_idx) / kSyntheticFps;
  frame.intrinsics = K;
  frame.color = core::ImageRgb(K.width, K.height);
  frame.depth = core::DepthMap(K.width, K.height);

  for (int v = 0; v < K.height; ++v) {
    for (int u = 0; u < K.width; ++u) {
      // Unnormalized direction with z_cam = 1, so the ray parameter equals
      // sensor depth.
      const Vec3 dir = pose.rotation * K.unproject(u, v);
      double t_exit = std::numeric_limits<double>::infinity();
      for (int a = 0; a < 3; ++a) {
        if (std::abs(dir(a)) < 1e-15) continue;
        const double bound = dir(a) > 0 ? scene.room_max(a) : scene.room_min(a);
        t_exit = std::min(t_exit, (bound - origin(a)) / dir(a));
      }
      const Vec3 hit = origin + t_exit * dir;
      frame.depth.set(u, v, t_exit);
      frame.color.set(u, v, scene.surface_color(hit));
    }
  }
  return frame;
}

}  // namespace mosaic::dataset
