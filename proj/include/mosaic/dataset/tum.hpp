#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mosaic/core/frame.hpp"
#include "mosaic/core/se3.hpp"

namespace mosaic::dataset {

struct SequenceEntry {
  double timestamp = 0.0;  // color timestamp
  std::filesystem::path color_path;
  std::filesystem::path depth_path;
  std::optional<core::Pose> ground_truth;  // camera-to-world
};

/// Associated color/depth/ground-truth index of a TUM-format sequence.
struct SequenceIndex {
  std::filesystem::path dir;
  std::vector<SequenceEntry> entries;
};

/// Parses rgb.txt/depth.txt (and groundtruth.txt when present) and pairs the
/// streams by nearest timestamp within `max_dt`. Unmatched entries are
/// dropped. Throws DatasetError when list files are missing or nothing pairs.
SequenceIndex load_tum(const std::filesystem::path& dir, double max_dt = 0.02);

/// Decodes one entry: 8-bit color and 16-bit depth PNG at scale 1/5000 m.
core::RgbdFrame load_frame(const SequenceIndex& index, size_t i,
                           const core::Intrinsics& intrinsics);

/// Greedy minimum-|dt| pairing between two timestamp lists; returns index
/// pairs (i, j) with each side used at most once. Shared by the loader and
/// the trajectory evaluator.
std::vector<std::pair<size_t, size_t>> associate_timestamps(
    const std::vector<double>& a, const std::vector<double>& b, double max_dt);

}  // namespace mosaic::dataset
