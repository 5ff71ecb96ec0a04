// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <tuple>

#include "sct/kernels.hpp"
#include "test_util.hpp"

namespace sct {
namespace {

using kernels::Trans;
using testing::max_abs_diff;
using testing::random_values;

// C = op(A) op(B) by triple loop on logical indices.
std::vector<double> gemm_oracle(Trans ta, Trans tb, std::size_t m, std::size_t n, std::size_t k,
                                const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> c(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0;
      for (std::size_t p = 0; p < k; ++p) {
        const double av = ta == Trans::no ? a[i * k + p] : a[p * m + i];
        const double bv = tb == Trans::no ? b[p * n + j] : b[j * k + p];
        s += av * bv;
      }
      c[i * n + j] = s;
    }
  }
  return c;
}

class GemmTest : public ::testing::TestWithParam<std::tuple<Trans, Trans, std::size_t>> {};

TEST_P(GemmTest, ParallelAndReferenceMatchOracle) {
  const auto [ta, tb, size] = GetParam();
  std::mt19937_64 rng(size);
  const std::size_t m = size, n = size + 3, k = size / 2 + 1;
  const auto a = random_values(m * k, rng);
  const auto b = random_values(k * n, rng);
  const auto want = gemm_oracle(ta, tb, m, n, k, a, b);
  std::vector<double> fast(m * n), ref(m * n);
  kernels::gemm(ta, tb, m, n, k, a.data(), b.data(), fast.data(), false);
  kernels::reference::gemm(ta, tb, m, n, k, a.data(), b.data(), ref.data(), false);
  EXPECT_LT(max_abs_diff(fast, want), 1e-10);
  EXPECT_LT(max_abs_diff(ref, want), 1e-10);

  // accumulate adds onto existing contents
  std::vector<double> acc(m * n, 1.5);
  kernels::gemm(ta, tb, m, n, k, a.data(), b.data(), acc.data(), true);
  for (std::size_t i = 0; i < acc.size(); ++i) EXPECT_NEAR(acc[i], want[i] + 1.5, 1e-10);
}

INSTANTIATE_TEST_SUITE_P(AllLayouts, GemmTest,
                         ::testing::Combine(::testing::Values(Trans::no, Trans::yes),
                                            ::testing::Values(Trans::no, Trans::yes),
                                            ::testing::Values(std::size_t{1}, std::size_t{7},
                                                              std::size_t{40}, std::size_t{70})));

TEST(Kernels, GemmFloatMatchesDouble) {
  std::mt19937_64 rng(3);
  const std::size_t m = 33, n = 65, k = 129;
  const auto a = random_values(m * k, rng);
  const auto b = random_values(k * n, rng);
  std::vector<float> af(a.begin(), a.end()), bf(b.begin(), b.end()), cf(m * n);
  kernels::gemm(Trans::no, Trans::no, m, n, k, af.data(), bf.data(), cf.data(), false);
  const auto want = gemm_oracle(Trans::no, Trans::no, m, n, k, a, b);
  EXPECT_LT(max_abs_diff(cf, want), 1e-3);
}

TEST(Kernels, SoftmaxMatchesReferenceAndSumsToOne) {
  std::mt19937_64 rng(5);
  const std::size_t outer = 6, n = 11, inner = 4;
  auto in = random_values(outer * n * inner, rng, 3.0);
  in[0] = 800.0;  // large logits must not overflow
  std::vector<double> fast(in.size()), ref(in.size());
  kernels::softmax(in.data(), fast.data(), outer, n, inner);
  kernels::reference::softmax(in.data(), ref.data(), outer, n, inner);
  EXPECT_LT(max_abs_diff(fast, ref), 1e-14);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t r = 0; r < inner; ++r) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = fast[(o * n + i) * inner + r];
        EXPECT_GE(v, 0.0);
        s += v;
      }
      EXPECT_NEAR(s, 1.0, 1e-12);
    }
  }
}

TEST(Kernels, LayerNormMatchesDirectFormula) {
  std::mt19937_64 rng(9);
  const std::size_t rows = 13, n = 24;
  const auto in = random_values(rows * n, rng, 2.0);
  const auto gamma = random_values(n, rng);
  const auto beta = random_values(n, rng);
  std::vector<double> fast(in.size()), ref(in.size()), mean(rows), rstd(rows);
  kernels::layer_norm(in.data(), gamma.data(), beta.data(), fast.data(), mean.data(), rstd.data(),
                      rows, n, 1e-5);
  std::vector<double> ref_mean(rows), ref_rstd(rows);
  kernels::reference::layer_norm(in.data(), gamma.data(), beta.data(), ref.data(), ref_mean.data(),
                                 ref_rstd.data(), rows, n, 1e-5);
  EXPECT_LT(max_abs_diff(fast, ref), 1e-12);
  for (std::size_t r = 0; r < rows; ++r) {
    double mu = 0, var = 0;
    for (std::size_t i = 0; i < n; ++i) mu += in[r * n + i];
    mu /= n;
    for (std::size_t i = 0; i < n; ++i) var += (in[r * n + i] - mu) * (in[r * n + i] - mu);
    var /= n;
    EXPECT_NEAR(mean[r], mu, 1e-12);
    EXPECT_NEAR(rstd[r], 1.0 / std::sqrt(var + 1e-5), 1e-10);
    for (std::size_t i = 0; i < n; ++i) {
      const double want = (in[r * n + i] - mu) / std::sqrt(var + 1e-5) * gamma[i] + beta[i];
      EXPECT_NEAR(fast[r * n + i], want, 1e-10);
    }
  }
}

TEST(Kernels, ThreadCountRoundTrips) {
  const int before = kernels::max_threads();
  EXPECT_GE(before, 1);
  kernels::set_threads(1);
  EXPECT_EQ(kernels::max_threads(), 1);
  kernels::set_threads(before);
  EXPECT_EQ(kernels::max_threads(), before);
}

}  // namespace
}  // namespace sct
