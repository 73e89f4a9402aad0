#pragma once

#include <cstddef>

namespace mosaic::core {

/// Pairwise-tree summation: a fixed reduction order independent of how the
/// values were produced, so parallel producers cannot perturb the result.
template <typename S>
S tree_sum(const S* v, size_t n) {
  if (n == 0) return S(0);
  if (n <= 8) {
    S acc = v[0];
    for (size_t i = 1; i < n; ++i) acc += v[i];
    return acc;
  }
  const size_t half = n / 2;
  return tree_sum(v, half) + tree_sum(v + half, n - half);
}

template <typename Container>
auto tree_sum(const Container& c) {
  return tree_sum(c.data(), c.size());
}

}  // namespace mosaic::core
