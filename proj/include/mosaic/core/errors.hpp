#pragma once

#include <stdexcept>
#include <string>

namespace mosaic {

// Thrown for unreadable/inconsistent input data (missing list files, no
// associations, bad image files).
struct DatasetError : std::runtime_error {
  explicit DatasetError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown for invalid run configuration (unknown keys, out-of-range values).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown for corrupt serialized artifacts (map files, trajectory files).
struct FormatError : std::runtime_error {
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mosaic
