// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference kernels against the production (OpenMP) kernels.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "sct/kernels.hpp"
#include "sct/spectral_kernels.hpp"

namespace {

using sct::kernels::Trans;
namespace lanes = sct::spectral::kernels;

std::vector<float> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> d(0.f, 1.f);
  std::vector<float> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

template <bool Parallel>
void BM_Gemm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vec(n * n, 1), b = random_vec(n * n, 2);
  std::vector<float> c(n * n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      sct::kernels::gemm(Trans::no, Trans::no, n, n, n, a.data(), b.data(), c.data(), false);
    } else {
      sct::kernels::reference::gemm(Trans::no, Trans::no, n, n, n, a.data(), b.data(), c.data(), false);
    }
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * n * n));
}

template <bool Parallel>
void BM_Softmax(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const std::size_t n = 64;
  const auto in = random_vec(rows * n, 3);
  std::vector<float> out(rows * n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      sct::kernels::softmax(in.data(), out.data(), rows, n, 1);
    } else {
      sct::kernels::reference::softmax(in.data(), out.data(), rows, n, 1);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_LayerNorm(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const std::size_t n = 64;
  const auto in = random_vec(rows * n, 4);
  const std::vector<float> gamma(n, 1.f), beta(n, 0.f);
  std::vector<float> out(rows * n), mean(rows), rstd(rows);
  for (auto _ : state) {
    if constexpr (Parallel) {
      sct::kernels::layer_norm(in.data(), gamma.data(), beta.data(), out.data(), mean.data(),
                               rstd.data(), rows, n, 1e-5f);
    } else {
      sct::kernels::reference::layer_norm(in.data(), gamma.data(), beta.data(), out.data(),
                                          mean.data(), rstd.data(), rows, n, 1e-5f);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

// Temporal compression 243 -> 146 over J x C = 17 x 64 lanes.
template <bool Parallel>
void BM_Compress(benchmark::State& state) {
  const std::size_t big = 243, small = 146, inner = 17 * 64;
  const auto in = random_vec(big * inner, 5);
  std::vector<float> out(small * inner);
  for (auto _ : state) {
    if constexpr (Parallel) {
      lanes::apply_lanes(lanes::LaneOp::compress, in.data(), out.data(), 1, big, inner, small, false);
    } else {
      lanes::reference::apply_lanes(lanes::LaneOp::compress, in.data(), out.data(), 1, big, inner,
                                    small, false);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_Gemm<false>)->Arg(64)->Arg(256);
BENCHMARK(BM_Gemm<true>)->Arg(64)->Arg(256);
BENCHMARK(BM_Softmax<false>)->Arg(4096);
BENCHMARK(BM_Softmax<true>)->Arg(4096);
BENCHMARK(BM_LayerNorm<false>)->Arg(4096);
BENCHMARK(BM_LayerNorm<true>)->Arg(4096);
BENCHMARK(BM_Compress<false>);
BENCHMARK(BM_Compress<true>);

BENCHMARK_MAIN();
