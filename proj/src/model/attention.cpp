// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "sct/errors.hpp"
#include "sct/model.hpp"
#include "sct/ops.hpp"

namespace sct::model {

namespace {

template <typename T>
Tensor<T> maybe_dropout(const Tensor<T>& x, double rate, const RunContext& ctx) {
  if (!ctx.training || rate == 0.0) return x;
  if (ctx.rng == nullptr) throw ContractError("dropout in training mode needs a random stream");
  return dropout(x, rate, *ctx.rng);
}

}  // namespace

template <typename T>
Tensor<T> mhsa(const Tensor<T>& x, const AttentionParams<T>& p, std::size_t heads, double rate,
               const RunContext& ctx, Tensor<T>* weights) {
  if (x.rank() != 3) throw ShapeError("mhsa expects [B, N, C], got " + shape_str(x.shape()));
  const std::size_t b = x.dim(0), n = x.dim(1), c = x.dim(2);
  if (heads == 0 || c % heads != 0) {
    throw ConfigError("mhsa: channels " + std::to_string(c) + " not divisible by heads " +
                      std::to_string(heads));
  }
  const std::size_t d = c / heads;
  auto split = [&](const Tensor<T>& t, std::vector<std::size_t> perm) {
    return permute(reshape(t, {b, n, heads, d}), perm);
  };
  const auto q = split(scale(matmul(x, p.wq), static_cast<T>(1.0 / std::sqrt(static_cast<double>(d)))),
                       {0, 2, 1, 3});               // [B, H, N, d]
  const auto kt = split(matmul(x, p.wk), {0, 2, 3, 1});  // [B, H, d, N]
  const auto v = split(matmul(x, p.wv), {0, 2, 1, 3});   // [B, H, N, d]
  const auto attn = softmax(matmul(q, kt), -1);          // [B, H, N, N]
  if (weights != nullptr) *weights = attn;
  const auto ctx_v = reshape(permute(matmul(attn, v), {0, 2, 1, 3}), {b, n, c});
  return maybe_dropout(matmul(ctx_v, p.wo), rate, ctx);
}

template <typename T>
Tensor<T> ffn(const Tensor<T>& x, const FfnParams<T>& p, double rate, const RunContext& ctx) {
  const auto h = maybe_dropout(gelu(matmul(x, p.w1) + p.b1), rate, ctx);
  return maybe_dropout(matmul(h, p.w2) + p.b2, rate, ctx);
}

template Tensor<float> mhsa(const Tensor<float>&, const AttentionParams<float>&, std::size_t,
                            double, const RunContext&, Tensor<float>*);
template Tensor<double> mhsa(const Tensor<double>&, const AttentionParams<double>&, std::size_t,
                             double, const RunContext&, Tensor<double>*);
template Tensor<float> ffn(const Tensor<float>&, const FfnParams<float>&, double, const RunContext&);
template Tensor<double> ffn(const Tensor<double>&, const FfnParams<double>&, double,
                            const RunContext&);

}  // namespace sct::model
