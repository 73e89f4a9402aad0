#pragma once

#include <filesystem>
#include <vector>

#include "mosaic/core/frame.hpp"
#include "mosaic/core/se3.hpp"

namespace mosaic::dataset {

/// Axis-aligned box room with a procedural surface texture and a camera
/// trajectory strictly inside it. Frames render by exact ray-box
/// intersection, so each frame has a closed-form ground truth.
struct SyntheticScene {
  core::Vec3 room_min = core::Vec3(-2, -2, -1.3);
  core::Vec3 room_max = core::Vec3(4, 2, 1.3);
  double checker_cell = 0.5;
  core::Intrinsics intrinsics{250.0, 250.0, 159.5, 119.5, 320, 240};
  std::vector<core::Pose> trajectory;  // camera-to-world

  /// Procedural surface color: 3D checker mixed with a smooth gradient, so
  /// every surface has both sharp and smooth photometric structure.
  Eigen::Vector3f surface_color(const core::Vec3& p) const;

  /// Distance from a point to the box surface (0 on the surface).
  double surface_distance(const core::Vec3& p) const;

  void validate() const;
};

/// Reads the plain-text scene description (box extents, waypoints, frame
/// count, optional intrinsics/look direction). Lines starting with '#' are
/// ignored.
SyntheticScene load_scene(const std::filesystem::path& file);

/// Evenly spaced poses along the waypoint polyline looking along `look_dir`
/// (or at `look_at`), with +z up in the world.
std::vector<core::Pose> make_trajectory(const std::vector<core::Vec3>& waypoints,
                                        int frames, const core::Vec3& look_dir,
                                        bool use_look_at = false,
                                        const core::Vec3& look_at = core::Vec3::Zero());

/// Renders frame `frame_idx` of the trajectory. Deterministic; throws when
/// the pose is outside the room.
core::RgbdFrame render_synthetic(const SyntheticScene& scene, size_t frame_idx);

/// Frame timestamps are frame_idx / fps.
constexpr double kSyntheticFps = 15.0;

}  // namespace mosaic::dataset
