#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mosaic/core/random.hpp"

namespace mosaic::field {

template <typename S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Network shape: sin/cos embedding of `embed_features` random frequencies,
/// `hidden_layers` layers of `hidden_width` units with rectifier activations,
/// the embedding concatenated onto the input of hidden layer `skip_layer`
/// (0-based), and a 4-wide head (rgb via sigmoid, density via rectifier).
struct FieldArchitecture {
  int embed_features = 93;
  float embed_sigma = 25.f;
  int hidden_width = 256;
  int hidden_layers = 4;
  int skip_layer = 2;
  static constexpr int out_dim = 4;

  int embed_dim() const { return 2 * embed_features; }
  int layer_count() const { return hidden_layers + 1; }

  int layer_in(int l) const {
    if (l == 0) return embed_dim();
    if (l == skip_layer) return hidden_width + embed_dim();
    return hidden_width;
  }
  int layer_out(int l) const { return l == hidden_layers ? out_dim : hidden_width; }

  int64_t param_count() const {
    int64_t n = 0;
    for (int l = 0; l < layer_count(); ++l)
      n += static_cast<int64_t>(layer_out(l)) * layer_in(l) + layer_out(l);
    return n;
  }

  void validate() const {
    if (embed_features < 1 || hidden_width < 1 || hidden_layers < 1 ||
        !(embed_sigma > 0))
      throw std::invalid_argument("field architecture: sizes must be positive");
    if (skip_layer < 1 || skip_layer >= hidden_layers)
      throw std::invalid_argument("field architecture: skip layer out of range");
  }

  bool operator==(const FieldArchitecture&) const = default;
};

/// Random frequencies of the positional embedding. Fixed after construction
/// and shared by every region of a run.
struct EmbeddingBasis {
  Eigen::MatrixXf frequencies;  // embed_features x 3
  uint64_t seed = 0;
  float sigma = 0.f;

  static EmbeddingBasis generate(int embed_features, float sigma, uint64_t seed) {
    EmbeddingBasis basis;
    basis.seed = seed;
    basis.sigma = sigma;
    basis.frequencies.resize(embed_features, 3);
    core::RandomStream rng(seed);
    for (int i = 0; i < embed_features; ++i)
      for (int j = 0; j < 3; ++j)
        basis.frequencies(i, j) = static_cast<float>(sigma * rng.normal());
    return basis;
  }

  static EmbeddingBasis from_matrix(Eigen::MatrixXf b) {
    EmbeddingBasis basis;
    basis.frequencies = std::move(b);
    return basis;
  }
};

/// gamma(p) = [sin(2 pi B p); cos(2 pi B p)], columns are points.
template <typename S>
MatX<S> embed(const EmbeddingBasis& basis, const MatX<S>& points) {
  const int e = static_cast<int>(basis.frequencies.rows());
  const MatX<S> b = basis.frequencies.template cast<S>();
  MatX<S> theta = (S(2) * S(M_PI)) * (b * points);
  MatX<S> out(2 * e, points.cols());
  out.topRows(e) = theta.array().sin().matrix();
  out.bottomRows(e) = theta.array().cos().matrix();
  return out;
}

template <typename S>
struct LayerTensors {
  MatX<S> weight;  // out x in
  VecX<S> bias;    // out
};

/// The full weight set of one region's network.
template <typename S>
struct Params {
  FieldArchitecture arch;
  std::vector<LayerTensors<S>> layers;

  static Params zeros(const FieldArchitecture& arch) {
    arch.validate();
    Params p;
    p.arch = arch;
    for (int l = 0; l < arch.layer_count(); ++l)
      p.layers.push_back({MatX<S>::Zero(arch.layer_out(l), arch.layer_in(l)),
                          VecX<S>::Zero(arch.layer_out(l))});
    return p;
  }

  /// He-scaled hidden layers; near-zero head so an untrained field renders
  /// mid-gray and (almost) zero density.
  static Params random_init(const FieldArchitecture& arch, core::RandomStream& rng) {
    Params p = zeros(arch);
    for (int l = 0; l < arch.layer_count(); ++l) {
      const bool head = l == arch.hidden_layers;
      const double scale =
          head ? 1e-4 : std::sqrt(2.0 / static_cast<double>(arch.layer_in(l)));
      auto& w = p.layers[l].weight;
      for (int c = 0; c < w.cols(); ++c)
        for (int r = 0; r < w.rows(); ++r) w(r, c) = static_cast<S>(scale * rng.normal());
    }
    return p;
  }

  template <typename T>
  Params<T> cast() const {
    Params<T> out;
    out.arch = arch;
    for (const auto& l : layers)
      out.layers.push_back(
          {l.weight.template cast<T>(), l.bias.template cast<T>()});
    return out;
  }

  bool all_finite() const {
    for (const auto& l : layers)
      if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
    return true;
  }

  bool operator==(const Params& other) const {
    if (!(arch == other.arch) || layers.size() != other.layers.size()) return false;
    for (size_t i = 0; i < layers.size(); ++i)
      if (layers[i].weight != other.layers[i].weight ||
          layers[i].bias != other.layers[i].bias)
        return false;
    return true;
  }
};

using FieldParams = Params<float>;

/// Same tensor layout as Params; used for gradients and moment accumulators.
template <typename S>
Params<S> zeros_like(const Params<S>& p) {
  return Params<S>::zeros(p.arch);
}

template <typename S>
struct Outputs {
  MatX<S> rgb;    // 3 x n, sigmoid range
  VecX<S> sigma;  // n, rectified
};

/// Forward intermediates needed by backward().
template <typename S>
struct ForwardCache {
  MatX<S> points;    // 3 x n
  MatX<S> embedded;  // 2E x n
  std::vector<MatX<S>> activations;  // post-relu per hidden layer
  MatX<S> head_pre;                  // 4 x n pre-activation
  bool valid = false;
};

template <typename S>
Outputs<S> forward(const Params<S>& params, const EmbeddingBasis& basis,
                   const MatX<S>& points, ForwardCache<S>* cache = nullptr) {
  if (!params.all_finite())
    throw std::invalid_argument("field forward: non-finite parameters");
  const auto& arch = params.arch;
  MatX<S> gamma = embed<S>(basis, points);
  MatX<S> h;
  std::vector<MatX<S>> acts;
  for (int l = 0; l < arch.hidden_layers; ++l) {
    MatX<S> z;
    if (l == 0) {
      z.noalias() = params.layers[l].weight * gamma;
    } else if (l == arch.skip_layer) {
      const int w = arch.hidden_width;
      z.noalias() = params.layers[l].weight.leftCols(w) * h;
      z.noalias() += params.layers[l].weight.rightCols(arch.embed_dim()) * gamma;
    } else {
      z.noalias() = params.layers[l].weight * h;
    }
    z.colwise() += params.layers[l].bias;
    h = z.cwiseMax(S(0));
    if (cache) acts.push_back(h);
  }
  MatX<S> head = params.layers[arch.hidden_layers].weight * h;
  head.colwise() += params.layers[arch.hidden_layers].bias;

  Outputs<S> out;
  out.rgb = (S(1) / (S(1) + (-head.topRows(3)).array().exp())).matrix();
  out.sigma = head.row(3).transpose().cwiseMax(S(0));
  if (cache) {
    cache->points = points;
    cache->embedded = std::move(gamma);
    cache->activations = std::move(acts);
    cache->head_pre = std::move(head);
    cache->valid = true;
  }
  return out;
}

/// Exact reverse-mode gradients. `param_grads` (when non-null) receives
/// accumulated dL/dW, dL/db; `point_grads` (when non-null) receives dL/dp
/// through the embedding. The cache must come from a forward() call with the
/// same params and points.
template <typename S>
void backward(const Params<S>& params, const EmbeddingBasis& basis,
              const ForwardCache<S>& cache, const MatX<S>& d_rgb,
              const VecX<S>& d_sigma, Params<S>* param_grads,
              MatX<S>* point_grads) {
  if (!cache.valid) throw std::logic_error("field backward: missing forward cache");
  const auto& arch = params.arch;
  const int n = static_cast<int>(cache.points.cols());
  const int e2 = arch.embed_dim();

  // Head: rgb rows through the sigmoid derivative, density through the
  // rectifier mask (subgradient 0 at the kink).
  MatX<S> delta(4, n);
  const auto rgb_pre = cache.head_pre.topRows(3).array();
  const auto sig = (S(1) / (S(1) + (-rgb_pre).exp()));
  delta.topRows(3) = (d_rgb.array() * sig * (S(1) - sig)).matrix();
  delta.row(3) =
      (d_sigma.transpose().array() * (cache.head_pre.row(3).array() > S(0)).template cast<S>())
          .matrix();

  MatX<S> d_gamma = MatX<S>::Zero(e2, n);
  for (int l = arch.hidden_layers; l >= 0; --l) {
    const MatX<S>& input = l == 0 ? cache.embedded : cache.activations[l - 1];
    if (param_grads) {
      auto& g = param_grads->layers[l];
      if (l == arch.skip_layer) {
        g.weight.leftCols(arch.hidden_width).noalias() += delta * input.transpose();
        g.weight.rightCols(e2).noalias() += delta * cache.embedded.transpose();
      } else {
        g.weight.noalias() += delta * input.transpose();
      }
      g.bias.noalias() += delta.rowwise().sum();
    }
    if (l == 0) {
      d_gamma.noalias() += params.layers[0].weight.transpose() * delta;
      break;
    }
    MatX<S> d_input;
    if (l == arch.skip_layer) {
      d_input.noalias() = params.layers[l].weight.leftCols(arch.hidden_width).transpose() * delta;
      d_gamma.noalias() += params.layers[l].weight.rightCols(e2).transpose() * delta;
    } else {
      d_input.noalias() = params.layers[l].weight.transpose() * delta;
    }
    // Through the previous layer's rectifier.
    delta = (d_input.array() * (cache.activations[l - 1].array() > S(0)).template cast<S>())
                .matrix();
  }

  if (point_grads) {
    const int e = arch.embed_features;
    const MatX<S> b = basis.frequencies.template cast<S>();
    const MatX<S> theta = (S(2) * S(M_PI)) * (b * cache.points);
    const MatX<S> mod = (d_gamma.topRows(e).array() * theta.array().cos() -
                         d_gamma.bottomRows(e).array() * theta.array().sin())
                            .matrix();
    point_grads->noalias() = (S(2) * S(M_PI)) * (b.transpose() * mod);
  }
}

/// Single-point convenience wrappers.
template <typename S>
struct PointOutput {
  Eigen::Matrix<S, 3, 1> rgb;
  S sigma;
};

template <typename S>
PointOutput<S> forward_point(const Params<S>& params, const EmbeddingBasis& basis,
                             const Eigen::Matrix<S, 3, 1>& p) {
  MatX<S> pts(3, 1);
  pts.col(0) = p;
  const auto out = forward<S>(params, basis, pts);
  return {out.rgb.col(0), out.sigma(0)};
}

}  // namespace mosaic::field
