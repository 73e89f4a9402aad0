#include "mosaic/dataset/tum.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <fstream>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <sstream>

#include "mosaic/core/errors.hpp"

namespace mosaic::dataset {
namespace {

constexpr double kDepthScale = 5000.0;  // 16-bit raw units per meter

struct TimedPath {
  double t;
  std::string path;
};

std::vector<TimedPath> read_list(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DatasetError("missing list file: " + file.string());
  std::vector<TimedPath> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    TimedPath e;
    if (ss >> e.t >> e.path) out.push_back(std::move(e));
  }
  return out;
}

struct TimedPose {
  double t;
  core::Pose pose;
};

std::vector<TimedPose> read_groundtruth(const std::filesystem::path& file) {
  std::ifstream in(file);
  std::vector<TimedPose> out;
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    double t, tx, ty, tz, qx, qy, qz, qw;
    if (!(ss >> t >> tx >> ty >> tz >> qx >> qy >> qz >> qw)) continue;
    Eigen::Quaterniond q(qw, qx, qy, qz);
    if (q.norm() < 1e-9) continue;
    q.normalize();
    out.push_back({t, core::Pose{q.toRotationMatrix(), core::Vec3(tx, ty, tz)}});
  }
  return out;
}

}  // namespace

std::vector<std::pair<size_t, size_t>> associate_timestamps(
    const std::vector<double>& a, const std::vector<double>& b, double max_dt) {
  // All candidate pairs within the window, greedily consumed by |dt|. This
  // makes the pairing symmetric in the two streams.
  struct Cand {
    double adt;
    size_t i, j;
  };
  std::vector<Cand> cands;
  size_t lo = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    while (lo < b.size() && b[lo] < a[i] - max_dt) ++lo;
    for (size_t j = lo; j < b.size() && b[j] <= a[i] + max_dt; ++j)
      cands.push_back({std::abs(a[i] - b[j]), i, j});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.adt != y.adt) return x.adt < y.adt;
    return std::tie(x.i, x.j) < std::tie(y.i, y.j);
  });
  std::vector<char> used_a(a.size(), 0), used_b(b.size(), 0);
  std::vector<std::pair<size_t, size_t>> pairs;
  for (const auto& c : cands) {
    if (used_a[c.i] || used_b[c.j]) continue;
    used_a[c.i] = used_b[c.j] = 1;
    pairs.emplace_back(c.i, c.j);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

SequenceIndex load_tum(const std::filesystem::path& dir, double max_dt) {
  const auto rgb = read_list(dir / "rgb.txt");
  const auto depth = read_list(dir / "depth.txt");
  const auto gt = read_groundtruth(dir / "groundtruth.txt");

  std::vector<double> rgb_t(rgb.size()), depth_t(depth.size());
  for (size_t i = 0; i < rgb.size(); ++i) rgb_t[i] = rgb[i].t;
  for (size_t i = 0; i < depth.size(); ++i) depth_t[i] = depth[i].t;
  const auto pairs = associate_timestamps(rgb_t, depth_t, max_dt);
  if (pairs.empty()) throw DatasetError("no color/depth associations in " + dir.string());

  std::vector<double> gt_t(gt.size());
  for (size_t i = 0; i < gt.size(); ++i) gt_t[i] = gt[i].t;

  SequenceIndex index;
  index.dir = dir;
  std::vector<double> paired_t;
  for (const auto& [i, j] : pairs) {
    SequenceEntry e;
    e.timestamp = rgb[i].t;
    e.color_path = dir / rgb[i].path;
    e.depth_path = dir / depth[j].path;
    if (!std::filesystem::exists(e.color_path))
      throw DatasetError("referenced file missing: " + e.color_path.string());
    if (!std::filesystem::exists(e.depth_path))
      throw DatasetError("referenced file missing: " + e.depth_path.string());
    index.entries.push_back(std::move(e));
    paired_t.push_back(rgb[i].t);
  }
  if (!gt.empty()) {
    // Nearest ground-truth pose per entry, no interpolation.
    const auto gt_pairs = associate_timestamps(paired_t, gt_t, max_dt);
    for (const auto& [i, j] : gt_pairs) index.entries[i].ground_truth = gt[j].pose;
  }
  return index;
}

core::RgbdFrame load_frame(const SequenceIndex& index, size_t i,
                           const core::Intrinsics& intrinsics) {
  const auto& entry = index.entries.at(i);
  cv::Mat color = cv::imread(entry.color_path.string(), cv::IMREAD_COLOR);
  if (color.empty()) throw DatasetError("cannot decode " + entry.color_path.string());
  cv::Mat depth = cv::imread(entry.depth_path.string(), cv::IMREAD_UNCHANGED);
  if (depth.empty()) throw DatasetError("cannot decode " + entry.depth_path.string());
  if (depth.type() != CV_16UC1)
    throw DatasetError("depth image is not 16-bit: " + entry.depth_path.string());

  core::RgbdFrame frame;
  frame.timestamp = entry.timestamp;
  frame.intrinsics = intrinsics;
  frame.color = core::ImageRgb(color.cols, color.rows);
  frame.depth = core::DepthMap(depth.cols, depth.rows);
  for (int v = 0; v < color.rows; ++v)
    for (int u = 0; u < color.cols; ++u) {
      const auto& bgr = color.at<cv::Vec3b>(v, u);
      frame.color.set(u, v,
                      Eigen::Vector3f(bgr[2] / 255.f, bgr[1] / 255.f, bgr[0] / 255.f));
    }
  for (int v = 0; v < depth.rows; ++v)
    for (int u = 0; u < depth.cols; ++u)
      frame.depth.set(u, v, depth.at<uint16_t>(v, u) / kDepthScale);
  frame.validate();
  return frame;
}

}  // namespace mosaic::dataset
