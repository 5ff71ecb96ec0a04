// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sct/tensor.hpp"

// Encoders, the dual-stream block and the full lifting network.
namespace sct::model {

struct BlockConfig {
  std::size_t channels = 32;
  std::size_t heads = 4;
  std::size_t mlp_ratio = 4;
  double sigma = 0.6;
  double dropout = 0.0;
  // When false every temporal compression is replaced by the identity.
  bool compress = true;

  // Throws ConfigError.
  void validate() const;
};

// Dropout switch and its random stream. Default: inference.
struct RunContext {
  bool training = false;
  std::mt19937_64* rng = nullptr;
};

template <typename T>
struct AttentionParams {
  Tensor<T> wq, wk, wv, wo;  // [C, C], applied as x * W
};

template <typename T>
struct FfnParams {
  Tensor<T> w1, b1, w2, b2;  // [C, rC], [rC], [rC, C], [C]
};

// Two LayerNorm affine pairs, attention and feed-forward. For the spectral
// encoder ln1 precedes the compression; for the spatial encoder it precedes
// attention.
template <typename T>
struct EncoderParams {
  Tensor<T> ln1_gamma, ln1_beta;
  AttentionParams<T> attn;
  Tensor<T> ln2_gamma, ln2_beta;
  FfnParams<T> ffn;
};

// Branch 1 = spectral(spatial(x)), branch 2 = spatial(spectral(x)).
template <typename T>
struct BlockParams {
  EncoderParams<T> spatial1, spectral1, spectral2, spatial2;
  Tensor<T> w_fuse;  // [2C, 2]
};

// Multi-head self-attention over axis 1 of x [B, N, C]. When `weights` is
// non-null it receives the attention matrix [B, H, N, N].
template <typename T>
Tensor<T> mhsa(const Tensor<T>& x, const AttentionParams<T>& p, std::size_t heads,
               double dropout, const RunContext& ctx, Tensor<T>* weights = nullptr);

// gelu(x W1 + b1) W2 + b2.
template <typename T>
Tensor<T> ffn(const Tensor<T>& x, const FfnParams<T>& p, double dropout, const RunContext& ctx);

// x [B, F, J, C] -> [B, f, J, C], f = ceil(F sigma):
//   h = compress(LN1(x)); h' = h + MHSA_t(h); out = h' + FFN(LN2(h')).
// Temporal attention runs per joint.
template <typename T>
Tensor<T> sct_encoder(const Tensor<T>& x, const EncoderParams<T>& p, const BlockConfig& cfg,
                      const RunContext& ctx = {});

// x [B, F, J, C], pre-norm attention over joints per frame.
template <typename T>
Tensor<T> spatial_encoder(const Tensor<T>& x, const EncoderParams<T>& p, const BlockConfig& cfg,
                          const RunContext& ctx = {});

// w = softmax([a, b] W_fuse) per position; out = w0 a + w1 b.
template <typename T>
Tensor<T> adaptive_fusion(const Tensor<T>& a, const Tensor<T>& b, const Tensor<T>& w_fuse);

template <typename T>
Tensor<T> dual_stream_block(const Tensor<T>& x, const BlockParams<T>& p, const BlockConfig& cfg,
                            const RunContext& ctx = {});

// Align-corners linear interpolation of axis 1 from f to `frames`.
template <typename T>
Tensor<T> upsample_linear(const Tensor<T>& h, std::size_t frames);

struct ModelConfig {
  std::size_t layers = 2;
  std::size_t channels = 32;
  std::size_t frames = 27;
  std::size_t joints = 17;
  std::size_t heads = 4;
  std::size_t mlp_ratio = 4;
  double sigma = 0.6;
  double lambda = 1.0;
  double dropout = 0.1;
  bool compress = true;
  bool use_lpg = true;

  double lr = 2e-4;
  double lr_decay = 0.99;
  double weight_decay = 0.01;
  std::size_t batch_size = 16;
  std::size_t epochs = 120;
  std::size_t max_steps = 0;  // 0: no step cap
  bool flip_augment = true;
  std::uint64_t seed = 1;
  double unit_mm = 1000.0;  // network units per millimetre: coords / unit_mm
  std::string topology;     // empty: built-in 17-joint skeleton

  std::size_t input_channels() const { return use_lpg ? 5 : 3; }
  BlockConfig block() const;
  // f_0 .. f_L; constant when compression is off.
  std::vector<std::size_t> schedule() const;
  void validate() const;
};

template <typename T>
struct NetworkParams {
  Tensor<T> w_embed, b_embed;  // [in, C], [C]
  Tensor<T> pos_temporal;      // [F, 1, C]
  Tensor<T> pos_spatial;       // [J, C]
  std::vector<BlockParams<T>> blocks;
  Tensor<T> w_head, b_head;  // [C, 3], [3]

  ParameterList<T> named() const;
  std::vector<Tensor<T>> tensors() const;
  std::size_t count() const;
};

// normal(0, 0.02) projections and encodings, zero biases, LayerNorm (1, 0).
template <typename T>
NetworkParams<T> init_params(const ModelConfig& cfg, std::mt19937_64& rng);

template <typename T>
struct LayerActivations {
  Tensor<T> embedding;           // [B, F, J, C]
  std::vector<Tensor<T>> hidden;  // block i output at f_{i+1}
};

template <typename T>
struct ForwardResult {
  Tensor<T> pose;  // [B, F, J, 3]
  LayerActivations<T> activations;
};

// input [B, F, J, in] -> [B, F, J, C]; F may be shorter than cfg.frames.
template <typename T>
Tensor<T> embed(const Tensor<T>& input, const ModelConfig& cfg, const NetworkParams<T>& p);

template <typename T>
ForwardResult<T> forward(const Tensor<T>& input, const ModelConfig& cfg, const NetworkParams<T>& p,
                         const RunContext& ctx = {});

// Mean per-joint Euclidean distance over [.., 3].
template <typename T>
Tensor<T> mpjpe_loss(const Tensor<T>& pred, const Tensor<T>& gt);

// pred, gt [B, F, J, 3]: mean over batch of (1 / FJ) sum_k sum_j |DCT_t(pred - gt)[k, j]|.
template <typename T>
Tensor<T> fd_loss(const Tensor<T>& pred, const Tensor<T>& gt);

template <typename T>
Tensor<T> total_loss(const Tensor<T>& pred, const Tensor<T>& gt, double lambda);

struct Metrics {
  double mpjpe = 0.0;
  double p_mpjpe = 0.0;
  double pck = 0.0;  // percent of joints with error < 150 mm
  double auc = 0.0;  // percent, mean PCK over 0, 5, ..., 150 mm
  std::size_t poses = 0;
  std::size_t degenerate_poses = 0;  // aligned by translation only
};

inline constexpr double kPckThresholdMm = 150.0;

// pred, gt: `poses` x J x 3 in millimetres.
Metrics evaluate_metrics(const std::vector<double>& pred, const std::vector<double>& gt,
                         std::size_t joints);

// Similarity-aligns one J x 3 pose to gt in place. Returns false and applies
// only the translation when either pose is degenerate.
bool procrustes_align(double* pred, const double* gt, std::size_t joints);

}  // namespace sct::model
