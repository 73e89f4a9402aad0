#pragma once

#include <cstdint>
#include <vector>

#include "mosaic/field/field.hpp"

namespace mosaic::field {

/// Versioned little-endian blob: header (magic, version, architecture dims,
/// basis seed and sigma) followed by all weights and biases as 32-bit floats
/// in layer order (weight row-major, then bias). The byte length is a pure
/// function of the architecture.
std::vector<uint8_t> serialize(const FieldParams& params, const EmbeddingBasis& basis);

struct DeserializedField {
  FieldParams params;
  EmbeddingBasis basis;
};

/// Inverse of serialize(); throws FormatError on bad magic/version/dims.
DeserializedField deserialize(const uint8_t* data, size_t size);
DeserializedField deserialize(const std::vector<uint8_t>& bytes);

/// Serialized byte count for an architecture, without building a blob.
size_t serialized_size(const FieldArchitecture& arch);

}  // namespace mosaic::field
