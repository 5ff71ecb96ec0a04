// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sct/errors.hpp"
#include "sct/model.hpp"
#include "sct/ops.hpp"
#include "sct/spectral.hpp"

namespace sct::model {

void BlockConfig::validate() const {
  if (channels == 0 || heads == 0 || channels % heads != 0) {
    throw ConfigError("block: channels " + std::to_string(channels) + " not divisible by heads " +
                      std::to_string(heads));
  }
  if (mlp_ratio == 0) throw ConfigError("block: mlp_ratio must be positive");
  if (!(sigma > 0.0 && sigma < 1.0)) throw ConfigError("block: sigma must lie in (0, 1)");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("block: dropout must lie in [0, 1)");
}

namespace {

template <typename T>
void check_bfjc(const Tensor<T>& x, const char* op) {
  if (x.rank() != 4) throw ShapeError(std::string(op) + " expects [B, F, J, C], got " + shape_str(x.shape()));
}

}  // namespace

template <typename T>
Tensor<T> sct_encoder(const Tensor<T>& x, const EncoderParams<T>& p, const BlockConfig& cfg,
                      const RunContext& ctx) {
  check_bfjc(x, "sct_encoder");
  auto h = layer_norm(x, p.ln1_gamma, p.ln1_beta);
  if (cfg.compress) h = spectral::spectral_compress(h, 1, cfg.sigma);
  const std::size_t b = h.dim(0), f = h.dim(1), j = h.dim(2), c = h.dim(3);
  // Temporal tokens: one sequence of length f per (batch, joint).
  const auto tokens = reshape(permute(h, {0, 2, 1, 3}), {b * j, f, c});
  const auto att = mhsa(tokens, p.attn, cfg.heads, cfg.dropout, ctx);
  const auto h1 = h + permute(reshape(att, {b, j, f, c}), {0, 2, 1, 3});
  return h1 + ffn(layer_norm(h1, p.ln2_gamma, p.ln2_beta), p.ffn, cfg.dropout, ctx);
}

template <typename T>
Tensor<T> spatial_encoder(const Tensor<T>& x, const EncoderParams<T>& p, const BlockConfig& cfg,
                          const RunContext& ctx) {
  check_bfjc(x, "spatial_encoder");
  const std::size_t b = x.dim(0), f = x.dim(1), j = x.dim(2), c = x.dim(3);
  const auto tokens = reshape(layer_norm(x, p.ln1_gamma, p.ln1_beta), {b * f, j, c});
  const auto h1 = x + reshape(mhsa(tokens, p.attn, cfg.heads, cfg.dropout, ctx), {b, f, j, c});
  return h1 + ffn(layer_norm(h1, p.ln2_gamma, p.ln2_beta), p.ffn, cfg.dropout, ctx);
}

template <typename T>
Tensor<T> adaptive_fusion(const Tensor<T>& a, const Tensor<T>& b, const Tensor<T>& w_fuse) {
  if (a.shape() != b.shape()) {
    throw ContractError("adaptive_fusion: branch shapes differ " + shape_str(a.shape()) + " vs " +
                        shape_str(b.shape()));
  }
  const auto w = softmax(matmul(concat(a, b, -1), w_fuse), -1);
  return a * slice(w, -1, 0, 1) + b * slice(w, -1, 1, 1);
}

template <typename T>
Tensor<T> dual_stream_block(const Tensor<T>& x, const BlockParams<T>& p, const BlockConfig& cfg,
                            const RunContext& ctx) {
  const auto a = sct_encoder(spatial_encoder(x, p.spatial1, cfg, ctx), p.spectral1, cfg, ctx);
  const auto b = spatial_encoder(sct_encoder(x, p.spectral2, cfg, ctx), p.spatial2, cfg, ctx);
  return adaptive_fusion(a, b, p.w_fuse);
}

#define SCT_INSTANTIATE(T)                                                                     \
  template Tensor<T> sct_encoder(const Tensor<T>&, const EncoderParams<T>&, const BlockConfig&, \
                                 const RunContext&);                                           \
  template Tensor<T> spatial_encoder(const Tensor<T>&, const EncoderParams<T>&,                \
                                     const BlockConfig&, const RunContext&);                   \
  template Tensor<T> adaptive_fusion(const Tensor<T>&, const Tensor<T>&, const Tensor<T>&);    \
  template Tensor<T> dual_stream_block(const Tensor<T>&, const BlockParams<T>&,                \
                                       const BlockConfig&, const RunContext&);
SCT_INSTANTIATE(float)
SCT_INSTANTIATE(double)
#undef SCT_INSTANTIATE

}  // namespace sct::model
