#include "mosaic/core/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace mosaic::core {

void Intrinsics::validate() const {
  if (!(fx > 0) || !(fy > 0)) throw std::invalid_argument("intrinsics: fx, fy must be > 0");
  if (width <= 0 || height <= 0) throw std::invalid_argument("intrinsics: empty image size");
  if (!(cx >= 0 && cx < width) || !(cy >= 0 && cy < height))
    throw std::invalid_argument("intrinsics: principal point outside image");
}

void RgbdFrame::validate() const {
  intrinsics.validate();
  if (color.width != intrinsics.width || color.height != intrinsics.height ||
      depth.width != intrinsics.width || depth.height != intrinsics.height)
    throw std::invalid_argument("frame: image size does not match intrinsics");
  for (double d : depth.data)
    if (!(d >= 0.0) || !std::isfinite(d))
      throw std::invalid_argument("frame: depth must be finite and >= 0");
  for (float c : color.data)
    if (!(c >= 0.f && c <= 1.f))
      throw std::invalid_argument("frame: color values must be in [0,1]");
}

}  // namespace mosaic::core
