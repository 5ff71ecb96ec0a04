// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "sct/errors.hpp"
#include "sct/model.hpp"
#include "sct/op_builder.hpp"
#include "sct/ops.hpp"
#include "sct/spectral.hpp"

namespace sct::model {

BlockConfig ModelConfig::block() const {
  BlockConfig b;
  b.channels = channels;
  b.heads = heads;
  b.mlp_ratio = mlp_ratio;
  b.sigma = sigma;
  b.dropout = dropout;
  b.compress = compress;
  return b;
}

std::vector<std::size_t> ModelConfig::schedule() const {
  if (!compress) return std::vector<std::size_t>(layers + 1, frames);
  return spectral::compression_schedule(frames, sigma, layers);
}

void ModelConfig::validate() const {
  if (layers == 0) throw ConfigError("config: layers must be positive");
  if (frames == 0 || joints == 0) throw ConfigError("config: frames and joints must be positive");
  block().validate();
  if (!(lambda >= 0.0)) throw ConfigError("config: lambda must be non-negative");
  if (!(lr >= 0.0)) throw ConfigError("config: lr must be non-negative");
  if (!(lr_decay > 0.0)) throw ConfigError("config: lr_decay must be positive");
  if (!(weight_decay >= 0.0)) throw ConfigError("config: weight_decay must be non-negative");
  if (batch_size == 0) throw ConfigError("config: batch_size must be positive");
  if (!(unit_mm > 0.0)) throw ConfigError("config: unit_mm must be positive");
}

namespace {

template <typename T>
void add_encoder(ParameterList<T>& out, const std::string& prefix, const EncoderParams<T>& e) {
  out.push_back({prefix + ".ln1.gamma", e.ln1_gamma});
  out.push_back({prefix + ".ln1.beta", e.ln1_beta});
  out.push_back({prefix + ".attn.wq", e.attn.wq});
  out.push_back({prefix + ".attn.wk", e.attn.wk});
  out.push_back({prefix + ".attn.wv", e.attn.wv});
  out.push_back({prefix + ".attn.wo", e.attn.wo});
  out.push_back({prefix + ".ln2.gamma", e.ln2_gamma});
  out.push_back({prefix + ".ln2.beta", e.ln2_beta});
  out.push_back({prefix + ".ffn.w1", e.ffn.w1});
  out.push_back({prefix + ".ffn.b1", e.ffn.b1});
  out.push_back({prefix + ".ffn.w2", e.ffn.w2});
  out.push_back({prefix + ".ffn.b2", e.ffn.b2});
}

template <typename T>
EncoderParams<T> init_encoder(std::size_t c, std::size_t ratio, std::mt19937_64& rng) {
  const T sd = T(0.02);
  EncoderParams<T> e;
  e.ln1_gamma = Tensor<T>::full({c}, T(1), true);
  e.ln1_beta = Tensor<T>({c}, true);
  e.attn.wq = Tensor<T>::normal({c, c}, sd, rng, true);
  e.attn.wk = Tensor<T>::normal({c, c}, sd, rng, true);
  e.attn.wv = Tensor<T>::normal({c, c}, sd, rng, true);
  e.attn.wo = Tensor<T>::normal({c, c}, sd, rng, true);
  e.ln2_gamma = Tensor<T>::full({c}, T(1), true);
  e.ln2_beta = Tensor<T>({c}, true);
  e.ffn.w1 = Tensor<T>::normal({c, ratio * c}, sd, rng, true);
  e.ffn.b1 = Tensor<T>({ratio * c}, true);
  e.ffn.w2 = Tensor<T>::normal({ratio * c, c}, sd, rng, true);
  e.ffn.b2 = Tensor<T>({c}, true);
  return e;
}

}  // namespace

template <typename T>
ParameterList<T> NetworkParams<T>::named() const {
  ParameterList<T> out;
  out.push_back({"embed.weight", w_embed});
  out.push_back({"embed.bias", b_embed});
  out.push_back({"embed.pos_temporal", pos_temporal});
  out.push_back({"embed.pos_spatial", pos_spatial});
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string p = "blocks." + std::to_string(i);
    add_encoder(out, p + ".spatial1", blocks[i].spatial1);
    add_encoder(out, p + ".spectral1", blocks[i].spectral1);
    add_encoder(out, p + ".spectral2", blocks[i].spectral2);
    add_encoder(out, p + ".spatial2", blocks[i].spatial2);
    out.push_back({p + ".fuse", blocks[i].w_fuse});
  }
  out.push_back({"head.weight", w_head});
  out.push_back({"head.bias", b_head});
  return out;
}

template <typename T>
std::vector<Tensor<T>> NetworkParams<T>::tensors() const {
  std::vector<Tensor<T>> out;
  for (auto& nt : named()) out.push_back(nt.tensor);
  return out;
}

template <typename T>
std::size_t NetworkParams<T>::count() const {
  std::size_t n = 0;
  for (const auto& t : tensors()) n += t.numel();
  return n;
}

template <typename T>
NetworkParams<T> init_params(const ModelConfig& cfg, std::mt19937_64& rng) {
  cfg.validate();
  const std::size_t c = cfg.channels;
  const T sd = T(0.02);
  NetworkParams<T> p;
  p.w_embed = Tensor<T>::normal({cfg.input_channels(), c}, sd, rng, true);
  p.b_embed = Tensor<T>({c}, true);
  p.pos_temporal = Tensor<T>::normal({cfg.frames, 1, c}, sd, rng, true);
  p.pos_spatial = Tensor<T>::normal({cfg.joints, c}, sd, rng, true);
  for (std::size_t i = 0; i < cfg.layers; ++i) {
    BlockParams<T> b;
    b.spatial1 = init_encoder<T>(c, cfg.mlp_ratio, rng);
    b.spectral1 = init_encoder<T>(c, cfg.mlp_ratio, rng);
    b.spectral2 = init_encoder<T>(c, cfg.mlp_ratio, rng);
    b.spatial2 = init_encoder<T>(c, cfg.mlp_ratio, rng);
    b.w_fuse = Tensor<T>::normal({2 * c, 2}, sd, rng, true);
    p.blocks.push_back(std::move(b));
  }
  p.w_head = Tensor<T>::normal({c, 3}, sd, rng, true);
  p.b_head = Tensor<T>({3}, true);
  return p;
}

template <typename T>
Tensor<T> upsample_linear(const Tensor<T>& h, std::size_t frames) {
  if (h.rank() < 2) throw ShapeError("upsample_linear expects [B, f, ...], got " + shape_str(h.shape()));
  const std::size_t f = h.dim(1);
  if (frames == 0 || f > frames) {
    throw ContractError("upsample_linear: cannot map length " + std::to_string(f) + " to " +
                        std::to_string(frames));
  }
  if (f == frames) return h;
  const std::size_t batch = h.dim(0);
  const std::size_t row = h.numel() / (batch * f);
  // Source rows and weights per output frame.
  std::vector<std::size_t> i0(frames), i1(frames);
  std::vector<T> w1(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    if (f == 1) {
      i0[t] = i1[t] = 0;
      w1[t] = T(0);
      continue;
    }
    const double s = static_cast<double>(t) * static_cast<double>(f - 1) / static_cast<double>(frames - 1);
    i0[t] = std::min(static_cast<std::size_t>(std::floor(s)), f - 1);
    i1[t] = std::min(i0[t] + 1, f - 1);
    w1[t] = static_cast<T>(s - static_cast<double>(i0[t]));
  }
  Shape shape = h.shape();
  shape[1] = frames;
  std::vector<T> out(batch * frames * row);
  const T* src = h.data().data();
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t t = 0; t < frames; ++t) {
      const T* r0 = src + (b * f + i0[t]) * row;
      const T* r1 = src + (b * f + i1[t]) * row;
      T* o = out.data() + (b * frames + t) * row;
      const T a = T(1) - w1[t], c = w1[t];
      for (std::size_t k = 0; k < row; ++k) o[k] = a * r0[k] + c * r1[k];
    }
  }
  return record_op<T>("upsample_linear", std::move(shape), std::move(out), {h},
                      [h, batch, f, frames, row, i0, i1, w1](const TensorNode<T>& res) {
                        T* g = grad_sink(h);
                        if (!g) return;
                        const T* go = res.grad.data();
                        for (std::size_t b = 0; b < batch; ++b) {
                          for (std::size_t t = 0; t < frames; ++t) {
                            T* g0 = g + (b * f + i0[t]) * row;
                            T* g1 = g + (b * f + i1[t]) * row;
                            const T* o = go + (b * frames + t) * row;
                            const T a = T(1) - w1[t], c = w1[t];
                            for (std::size_t k = 0; k < row; ++k) {
                              g0[k] += a * o[k];
                              g1[k] += c * o[k];
                            }
                          }
                        }
                      });
}

template <typename T>
Tensor<T> embed(const Tensor<T>& input, const ModelConfig& cfg, const NetworkParams<T>& p) {
  if (input.rank() != 4) throw ShapeError("embed expects [B, F, J, in], got " + shape_str(input.shape()));
  const std::size_t frames = input.dim(1);
  if (input.dim(3) != cfg.input_channels()) {
    throw ContractError("embed: input has " + std::to_string(input.dim(3)) + " channels, expected " +
                        std::to_string(cfg.input_channels()));
  }
  if (input.dim(2) != cfg.joints) throw ContractError("embed: joint count does not match config");
  if (frames > cfg.frames) {
    throw ContractError("embed: " + std::to_string(frames) + " frames exceed the configured " +
                        std::to_string(cfg.frames));
  }
  const auto pos_t = frames == cfg.frames ? p.pos_temporal : slice(p.pos_temporal, 0, 0, frames);
  return matmul(input, p.w_embed) + p.b_embed + pos_t + p.pos_spatial;
}

template <typename T>
ForwardResult<T> forward(const Tensor<T>& input, const ModelConfig& cfg, const NetworkParams<T>& p,
                         const RunContext& ctx) {
  if (p.blocks.size() != cfg.layers) throw ContractError("forward: parameter/config layer count differs");
  ForwardResult<T> r;
  const BlockConfig bc = cfg.block();
  const std::size_t frames = input.dim(1);
  r.activations.embedding = embed(input, cfg, p);
  Tensor<T> h = r.activations.embedding;
  Tensor<T> acc = h;
  for (const auto& block : p.blocks) {
    h = dual_stream_block(h, block, bc, ctx);
    r.activations.hidden.push_back(h);
    acc = acc + upsample_linear(h, frames);
  }
  r.pose = matmul(acc, p.w_head) + p.b_head;
  return r;
}

#define SCT_INSTANTIATE(T)                                                                        \
  template struct NetworkParams<T>;                                                               \
  template NetworkParams<T> init_params(const ModelConfig&, std::mt19937_64&);                    \
  template Tensor<T> upsample_linear(const Tensor<T>&, std::size_t);                              \
  template Tensor<T> embed(const Tensor<T>&, const ModelConfig&, const NetworkParams<T>&);        \
  template ForwardResult<T> forward(const Tensor<T>&, const ModelConfig&, const NetworkParams<T>&, \
                                    const RunContext&);
SCT_INSTANTIATE(float)
SCT_INSTANTIATE(double)
#undef SCT_INSTANTIATE

}  // namespace sct::model
