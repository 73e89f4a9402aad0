#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "mosaic/core/errors.hpp"
#include "mosaic/core/point_cloud.hpp"
#include "mosaic/dataset/synthetic.hpp"
#include "mosaic/dataset/tum.hpp"

using namespace mosaic;
using namespace mosaic::dataset;
namespace fs = std::filesystem;

namespace {

// Minimal TUM-format directory with one color/depth pair.
fs::path make_tum_fixture(uint16_t raw_depth) {
  const fs::path dir = fs::temp_directory_path() / "mosaic_tum_fixture";
  fs::create_directories(dir / "rgb");
  fs::create_directories(dir / "depth");

  cv::Mat color(4, 4, CV_8UC3, cv::Scalar(10, 120, 200));
  cv::imwrite((dir / "rgb" / "1.000000.png").string(), color);
  cv::Mat depth(4, 4, CV_16UC1, cv::Scalar(raw_depth));
  cv::imwrite((dir / "depth" / "1.000000.png").string(), depth);

  std::ofstream(dir / "rgb.txt") << "# color images\n1.000000 rgb/1.000000.png\n";
  std::ofstream(dir / "depth.txt") << "1.000000 depth/1.000000.png\n";
  std::ofstream(dir / "groundtruth.txt")
      << "# t tx ty tz qx qy qz qw\n1.000000 1.0 2.0 3.0 0 0 0 1\n";
  return dir;
}

SyntheticScene small_scene(int frames = 3) {
  SyntheticScene scene;
  scene.room_min = core::Vec3(-1.5, -1.5, -1.2);
  scene.room_max = core::Vec3(3.5, 1.5, 1.2);
  scene.intrinsics = core::Intrinsics{120.0, 120.0, 79.5, 59.5, 160, 120};
  scene.trajectory = make_trajectory({core::Vec3(0, 0, 0), core::Vec3(1.0, 0, 0)},
                                     frames, core::Vec3(1, 0, 0));
  scene.validate();
  return scene;
}

}  // namespace

TEST_CASE("associate: identical timestamps pair fully") {
  std::vector<double> a{1.0, 2.0, 3.0}, b{1.0, 2.0, 3.0};
  const auto pairs = associate_timestamps(a, b, 0.02);
  REQUIRE(pairs.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(pairs[i].first == i);
    CHECK(pairs[i].second == i);
  }
}

TEST_CASE("associate: threshold boundary") {
  std::vector<double> a{1.000}, b{1.015};
  CHECK(associate_timestamps(a, b, 0.02).size() == 1);
  CHECK(associate_timestamps(a, b, 0.01).empty());
}

TEST_CASE("associate: symmetric in the two streams") {
  std::vector<double> a{1.00, 1.03, 1.09, 1.20, 1.31};
  std::vector<double> b{0.99, 1.04, 1.10, 1.19, 1.33, 1.50};
  const auto ab = associate_timestamps(a, b, 0.02);
  const auto ba = associate_timestamps(b, a, 0.02);
  REQUIRE(ab.size() == ba.size());
  for (const auto& [i, j] : ab) {
    CHECK(std::find(ba.begin(), ba.end(), std::make_pair(j, i)) != ba.end());
  }
}

TEST_CASE("associate: each entry used at most once") {
  std::vector<double> a{1.000, 1.001}, b{1.0005};
  const auto pairs = associate_timestamps(a, b, 0.02);
  CHECK(pairs.size() == 1);
}

TEST_CASE("load_tum: raw depth 5000 decodes to 1 meter") {
  const fs::path dir = make_tum_fixture(5000);
  const SequenceIndex index = load_tum(dir);
  REQUIRE(index.entries.size() == 1);
  REQUIRE(index.entries[0].ground_truth.has_value());
  CHECK((index.entries[0].ground_truth->translation - core::Vec3(1, 2, 3)).norm() <
        1e-12);

  core::Intrinsics k{100.0, 100.0, 1.5, 1.5, 4, 4};
  const core::RgbdFrame frame = load_frame(index, 0, k);
  CHECK(frame.depth.at(0, 0) == doctest::Approx(1.0));
  // BGR fixture color (10,120,200) decodes to RGB (200,120,10)/255.
  CHECK(frame.color.at(0, 0).x() == doctest::Approx(200 / 255.0));
  CHECK(frame.color.at(0, 0).z() == doctest::Approx(10 / 255.0));
}

TEST_CASE("load_tum: missing list file raises DatasetError") {
  const fs::path dir = fs::temp_directory_path() / "mosaic_tum_empty";
  fs::create_directories(dir);
  fs::remove(dir / "rgb.txt");
  CHECK_THROWS_AS(load_tum(dir), DatasetError);
}

TEST_CASE("load_tum: no associations raises DatasetError") {
  const fs::path dir = make_tum_fixture(5000);
  std::ofstream(dir / "depth.txt") << "9.000000 depth/1.000000.png\n";
  CHECK_THROWS_AS(load_tum(dir), DatasetError);
  std::ofstream(dir / "depth.txt") << "1.000000 depth/1.000000.png\n";
}

TEST_CASE("render_synthetic: wall 2 m ahead along the optical axis") {
  SyntheticScene scene;
  scene.room_min = core::Vec3(-1, -1, -1);
  scene.room_max = core::Vec3(2, 1, 1);
  scene.intrinsics = core::Intrinsics{100.0, 100.0, 40.0, 30.0, 81, 61};
  scene.trajectory = {core::Pose()};  // identity: camera z is world z...
  // Build explicitly: camera at origin looking along +x.
  scene.trajectory = make_trajectory({core::Vec3(0, 0, 0)}, 1, core::Vec3(1, 0, 0));
  const auto frame = render_synthetic(scene, 0);
  CHECK(frame.depth.at(40, 30) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("render_synthetic: deterministic") {
  const SyntheticScene scene = small_scene();
  const auto f1 = render_synthetic(scene, 1);
  const auto f2 = render_synthetic(scene, 1);
  CHECK(f1.depth.data == f2.depth.data);
  CHECK(f1.color.data == f2.color.data);
}

TEST_CASE("render_synthetic: corner pixel matches analytic ray-plane intersection") {
  const SyntheticScene scene = small_scene();
  const auto frame = render_synthetic(scene, 0);
  const core::Pose& pose = scene.trajectory[0];
  // Corner pixel (0, 0).
  const core::Vec3 dir = pose.rotation * scene.intrinsics.unproject(0, 0);
  // Independent slab computation per axis.
  double t = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (std::abs(dir(a)) < 1e-15) continue;
    const double bound = dir(a) > 0 ? scene.room_max(a) : scene.room_min(a);
    t = std::min(t, (bound - pose.translation(a)) / dir(a));
  }
  CHECK(std::abs(frame.depth.at(0, 0) - t) < 1e-9);
}

TEST_CASE("render_synthetic: backprojected points lie on room surfaces") {
  const SyntheticScene scene = small_scene();
  for (size_t f = 0; f < scene.trajectory.size(); ++f) {
    const auto frame = render_synthetic(scene, f);
    const auto cloud = core::backproject(frame, 7);
    const core::Pose& pose = scene.trajectory[f];
    for (const auto& p : cloud.points) {
      const core::Vec3 world = pose.apply(p);
      CHECK(scene.surface_distance(world) < 1e-6);
    }
  }
}

TEST_CASE("render_synthetic: pose outside the room is an error") {
  SyntheticScene scene = small_scene();
  scene.trajectory[0].translation = core::Vec3(50, 0, 0);
  CHECK_THROWS(render_synthetic(scene, 0));
}

TEST_CASE("scene file round trip") {
  const fs::path file = fs::temp_directory_path() / "mosaic_scene.txt";
  std::ofstream(file) << "# test scene\n"
                         "room_min -1.5 -1.5 -1.2\n"
                         "room_max 3.5 1.5 1.2\n"
                         "checker_cell 0.4\n"
                         "intrinsics 120 120 79.5 59.5 160 120\n"
                         "frames 5\n"
                         "waypoint 0 0 0\n"
                         "waypoint 1 0 0\n"
                         "look_dir 1 0 0\n";
  const SyntheticScene scene = load_scene(file);
  CHECK(scene.trajectory.size() == 5);
  CHECK(scene.checker_cell == doctest::Approx(0.4));
  CHECK((scene.trajectory[4].translation - core::Vec3(1, 0, 0)).norm() < 1e-12);
}

TEST_CASE("scene file rejects unknown keys") {
  const fs::path file = fs::temp_directory_path() / "mosaic_scene_bad.txt";
  std::ofstream(file) << "frames 2\nwaypoint 0 0 0\nbogus 1\n";
  CHECK_THROWS_AS(load_scene(file), ConfigError);
}
