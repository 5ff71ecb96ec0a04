// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "block_oracle.hpp"
#include "sct/errors.hpp"
#include "sct/grad_check.hpp"
#include "sct/model.hpp"
#include "sct/ops.hpp"
#include "sct/spectral.hpp"
#include "test_util.hpp"

namespace sct::model {
namespace {

using sct::testing::max_abs_diff;
using sct::testing::random_tensor;

BlockConfig small_cfg(std::size_t c, std::size_t heads, double sigma = 0.6) {
  BlockConfig cfg;
  cfg.channels = c;
  cfg.heads = heads;
  cfg.sigma = sigma;
  return cfg;
}

AttentionParams<double> random_attention(std::size_t c, std::mt19937_64& rng) {
  return {random_tensor({c, c}, rng, 0.5), random_tensor({c, c}, rng, 0.5),
          random_tensor({c, c}, rng, 0.5), random_tensor({c, c}, rng, 0.5)};
}

TEST(Mhsa, SingleTokenAttendsToItself) {
  std::mt19937_64 rng(1);
  const auto p = random_attention(4, rng);
  const auto x = random_tensor({2, 1, 4}, rng);
  Tensor<double> w;
  const auto y = mhsa(x, p, 2, 0.0, {}, &w);
  for (double v : w.data()) EXPECT_DOUBLE_EQ(v, 1.0);
  const auto want = matmul(matmul(x, p.wv), p.wo);
  EXPECT_LT(max_abs_diff(y, want), 1e-12);
}

TEST(Mhsa, IdenticalTokensGiveUniformWeights) {
  std::mt19937_64 rng(2);
  const auto p = random_attention(4, rng);
  const auto row = sct::testing::random_values(4, rng);
  std::vector<double> v;
  for (int i = 0; i < 5; ++i) v.insert(v.end(), row.begin(), row.end());
  Tensor<double> w;
  (void)mhsa(Tensor<double>({1, 5, 4}, v), p, 2, 0.0, {}, &w);
  for (double a : w.data()) EXPECT_NEAR(a, 0.2, 1e-12);
}

TEST(Mhsa, MatchesFormulaOracle) {
  std::mt19937_64 rng(3);
  const auto p = random_attention(4, rng);
  const auto x = random_tensor({1, 3, 4}, rng);
  Tensor<double> w;
  const auto y = mhsa(x, p, 2, 0.0, {}, &w);
  oracle::Mat tok(3, std::vector<double>(4));
  for (std::size_t n = 0; n < 3; ++n)
    for (std::size_t c = 0; c < 4; ++c) tok[n][c] = x.at({0, n, c});
  std::vector<oracle::Mat> ow;
  const auto want = oracle::attention(tok, p, 2, &ow);
  for (std::size_t n = 0; n < 3; ++n)
    for (std::size_t c = 0; c < 4; ++c) EXPECT_NEAR(y.at({0, n, c}), want[n][c], 1e-5);
  ASSERT_EQ(w.shape(), (Shape{1, 2, 3, 3}));
  for (std::size_t h = 0; h < 2; ++h)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(w.at({0, h, i, j}), ow[h][i][j], 1e-12);
}

TEST(Mhsa, HeadsMustDivideChannels) {
  std::mt19937_64 rng(4);
  const auto p = random_attention(6, rng);
  EXPECT_THROW(mhsa(random_tensor({1, 2, 6}, rng), p, 4, 0.0, {}), ConfigError);
  BlockConfig bad = small_cfg(6, 4);
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = small_cfg(8, 4, 1.0);
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Mhsa, AttentionRowsAreStochastic) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_attention(8, rng);
    Tensor<double> w;
    (void)mhsa(random_tensor({3, 7, 8}, rng, 3.0), p, 4, 0.0, {}, &w);
    const std::size_t rows = w.numel() / 7;
    for (std::size_t r = 0; r < rows; ++r) {
      double s = 0;
      for (std::size_t j = 0; j < 7; ++j) s += w.data()[r * 7 + j];
      EXPECT_NEAR(s, 1.0, 1e-6);
    }
  }
}

TEST(SctEncoder, CompressedLength) {
  std::mt19937_64 rng(6);
  const auto p = oracle::random_encoder<double>(8, 4, rng, 0.2);
  const auto y = sct_encoder(random_tensor({1, 27, 2, 8}, rng), p, small_cfg(8, 2));
  EXPECT_EQ(y.shape(), (Shape{1, 17, 2, 8}));
}

TEST(SctEncoder, ZeroWeightsReduceToCompressedNorm) {
  std::mt19937_64 rng(7);
  const auto p = oracle::zero_encoder<double>(8, 4);
  const auto x = random_tensor({2, 9, 3, 8}, rng);
  const auto y = sct_encoder(x, p, small_cfg(8, 2));
  const auto want = spectral::spectral_compress(layer_norm(x, p.ln1_gamma, p.ln1_beta), 1, 0.6);
  EXPECT_LT(max_abs_diff(y, want), 1e-12);
}

TEST(SctEncoder, MatchesStraightLineOracle) {
  std::mt19937_64 rng(8);
  const auto p = oracle::random_encoder<double>(8, 4, rng, 0.3);
  const auto x = random_tensor({2, 11, 3, 8}, rng);
  const auto y = sct_encoder(x, p, small_cfg(8, 2, 0.5));
  const auto want = oracle::temporal_encoder(oracle::values(x), 2, 11, 3, 8, 6, p, 2);
  EXPECT_LT(max_abs_diff(y.data(), want), 1e-9);
}

TEST(SctEncoder, NoTruncationEqualsUncompressedEncoder) {
  std::mt19937_64 rng(9);
  const auto p = oracle::random_encoder<double>(8, 4, rng, 0.3);
  const auto x = random_tensor({1, 12, 2, 8}, rng);
  auto cfg = small_cfg(8, 2, 0.95);  // ceil(12 * 0.95) = 12
  const auto y = sct_encoder(x, p, cfg);
  cfg.compress = false;
  EXPECT_LT(max_abs_diff(y, sct_encoder(x, p, cfg)), 1e-12);
  const auto want = oracle::temporal_encoder(oracle::values(x), 1, 12, 2, 8, 0, p, 2);
  EXPECT_LT(max_abs_diff(y.data(), want), 1e-9);
}

TEST(SpatialEncoder, SingleJointReducesToResidualFfnPath) {
  std::mt19937_64 rng(10);
  const auto p = oracle::random_encoder<double>(4, 4, rng, 0.3);
  const auto x = random_tensor({1, 3, 1, 4}, rng);
  const auto y = spatial_encoder(x, p, small_cfg(4, 2));
  // attention weight is 1: h = x + LN1(x) Wv Wo
  const auto h = x + matmul(matmul(layer_norm(x, p.ln1_gamma, p.ln1_beta), p.attn.wv), p.attn.wo);
  const auto want = h + ffn(layer_norm(h, p.ln2_gamma, p.ln2_beta), p.ffn, 0.0, {});
  EXPECT_LT(max_abs_diff(y, want), 1e-12);
}

TEST(SpatialEncoder, ZeroWeightsAreIdentity) {
  std::mt19937_64 rng(11);
  const auto x = random_tensor({2, 4, 5, 8}, rng);
  EXPECT_LT(max_abs_diff(spatial_encoder(x, oracle::zero_encoder<double>(8, 4), small_cfg(8, 2)), x), 1e-15);
}

TEST(SpatialEncoder, MatchesStraightLineOracle) {
  std::mt19937_64 rng(12);
  const auto p = oracle::random_encoder<double>(8, 4, rng, 0.3);
  const auto x = random_tensor({2, 3, 5, 8}, rng);
  const auto y = spatial_encoder(x, p, small_cfg(8, 4));
  EXPECT_LT(max_abs_diff(y.data(), oracle::spatial_encoder(oracle::values(x), 2, 3, 5, 8, p, 4)), 1e-9);
}

TEST(AdaptiveFusion, Examples) {
  std::mt19937_64 rng(13);
  const auto a = random_tensor({1, 3, 2, 4}, rng);
  const auto b = random_tensor({1, 3, 2, 4}, rng);
  const auto w = random_tensor({8, 2}, rng);
  EXPECT_LT(max_abs_diff(adaptive_fusion(a, a, w), a), 1e-12);
  const auto half = adaptive_fusion(a, b, Tensor<double>({8, 2}));
  EXPECT_LT(max_abs_diff(half, scale(a + b, 0.5)), 1e-12);
  EXPECT_THROW(adaptive_fusion(a, random_tensor({1, 2, 2, 4}, rng), w), ContractError);
}

TEST(AdaptiveFusion, MatchesDirectRecomputationAndIsConvex) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_tensor({2, 3, 2, 4}, rng);
    const auto b = random_tensor({2, 3, 2, 4}, rng);
    const auto w = random_tensor({8, 2}, rng);
    const auto y = adaptive_fusion(a, b, w);
    const auto av = a.data(), bv = b.data(), wv = w.data();
    for (std::size_t pos = 0; pos < 12; ++pos) {
      double l0 = 0, l1 = 0;
      for (std::size_t c = 0; c < 4; ++c) {
        l0 += av[pos * 4 + c] * wv[c * 2] + bv[pos * 4 + c] * wv[(4 + c) * 2];
        l1 += av[pos * 4 + c] * wv[c * 2 + 1] + bv[pos * 4 + c] * wv[(4 + c) * 2 + 1];
      }
      const double w0 = 1.0 / (1.0 + std::exp(l1 - l0));
      for (std::size_t c = 0; c < 4; ++c) {
        const double got = y.data()[pos * 4 + c];
        EXPECT_NEAR(got, w0 * av[pos * 4 + c] + (1 - w0) * bv[pos * 4 + c], 1e-6);
        EXPECT_GE(got, std::min(av[pos * 4 + c], bv[pos * 4 + c]) - 1e-12);
        EXPECT_LE(got, std::max(av[pos * 4 + c], bv[pos * 4 + c]) + 1e-12);
      }
    }
  }
}

BlockParams<double> random_block(std::size_t c, std::mt19937_64& rng, double sd, bool rg = false) {
  BlockParams<double> p;
  p.spatial1 = oracle::random_encoder<double>(c, 4, rng, sd, rg);
  p.spectral1 = oracle::random_encoder<double>(c, 4, rng, sd, rg);
  p.spectral2 = oracle::random_encoder<double>(c, 4, rng, sd, rg);
  p.spatial2 = oracle::random_encoder<double>(c, 4, rng, sd, rg);
  p.w_fuse = Tensor<double>::normal({2 * c, 2}, sd, rng, rg);
  return p;
}

TEST(DualStreamBlock, OutputLengthAndBranchComposition) {
  std::mt19937_64 rng(15);
  const auto p = random_block(8, rng, 0.2);
  const auto x = random_tensor({1, 27, 3, 8}, rng);
  const auto cfg = small_cfg(8, 2);
  const auto y = dual_stream_block(x, p, cfg);
  EXPECT_EQ(y.shape(), (Shape{1, 17, 3, 8}));
  const auto a = sct_encoder(spatial_encoder(x, p.spatial1, cfg), p.spectral1, cfg);
  const auto b = spatial_encoder(sct_encoder(x, p.spectral2, cfg), p.spatial2, cfg);
  EXPECT_EQ(a.shape(), b.shape());
  EXPECT_LT(max_abs_diff(y, adaptive_fusion(a, b, p.w_fuse)), 1e-12);
}

TEST(DualStreamBlock, ZeroWeightsReduceToCompressedNorm) {
  std::mt19937_64 rng(16);
  BlockParams<double> p;
  p.spatial1 = p.spectral1 = p.spectral2 = p.spatial2 = oracle::zero_encoder<double>(8, 4);
  p.w_fuse = random_tensor({16, 2}, rng);
  const auto x = random_tensor({2, 10, 3, 8}, rng);
  const auto y = dual_stream_block(x, p, small_cfg(8, 2));
  const auto want = spectral::spectral_compress(layer_norm(x, p.spectral2.ln1_gamma, p.spectral2.ln1_beta), 1, 0.6);
  EXPECT_LT(max_abs_diff(y, want), 1e-12);
}

TEST(DualStreamBlock, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(17);
  auto p = random_block(4, rng, 0.4, true);
  auto x = random_tensor({1, 6, 3, 4}, rng, 1.0, true);
  const auto cfg = small_cfg(4, 2);
  const auto probe = random_tensor({1, 4, 3, 4}, rng);
  std::vector<Tensor<double>> wrt = {x, p.w_fuse};
  for (auto* e : {&p.spatial1, &p.spectral1, &p.spectral2, &p.spatial2}) {
    for (auto* t : {&e->ln1_gamma, &e->ln1_beta, &e->attn.wq, &e->attn.wk, &e->attn.wv, &e->attn.wo,
                    &e->ln2_gamma, &e->ln2_beta, &e->ffn.w1, &e->ffn.b1, &e->ffn.w2, &e->ffn.b2}) {
      wrt.push_back(*t);
    }
  }
  const auto r = grad_check([&] { return sum(dual_stream_block(x, p, cfg) * probe); }, wrt);
  EXPECT_LT(r.max_rel_error, 1e-3) << "tensor " << r.worst_tensor << " index " << r.worst_index;
}

TEST(Dropout, OnlyActiveInTraining) {
  std::mt19937_64 rng(18);
  const auto p = oracle::random_encoder<double>(8, 4, rng, 0.3);
  const auto x = random_tensor({1, 5, 3, 8}, rng);
  auto cfg = small_cfg(8, 2);
  cfg.dropout = 0.5;
  const auto eval_a = spatial_encoder(x, p, cfg);
  cfg.dropout = 0.0;
  EXPECT_LT(max_abs_diff(eval_a, spatial_encoder(x, p, cfg)), 1e-15);
  cfg.dropout = 0.5;
  std::mt19937_64 drop_rng(1);
  const RunContext train{true, &drop_rng};
  EXPECT_GT(max_abs_diff(spatial_encoder(x, p, cfg, train), eval_a), 1e-6);
  EXPECT_THROW(spatial_encoder(x, p, cfg, RunContext{true, nullptr}), ContractError);
}

}  // namespace
}  // namespace sct::model
