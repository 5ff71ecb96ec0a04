// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sct/kernels.hpp"

#ifdef SCT_HAVE_OPENMP
#include <omp.h>
#endif

namespace sct::kernels {

namespace {

// Below this many multiply-adds a parallel region costs more than it saves.
constexpr std::size_t kParallelWork = 1 << 15;

using Index = std::int64_t;

// C[i, :] (+)= sum_p A[i, p] * B[p, :]; rows of C are independent.
template <typename T>
void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c,
             bool accumulate) {
  const bool par = m * n * k >= kParallelWork && m > 1;
  (void)par;
#pragma omp parallel for schedule(static) if (par)
  for (Index ii = 0; ii < static_cast<Index>(m); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    T* crow = c + i * n;
    if (!accumulate) std::fill(crow, crow + n, T(0));
    const T* arow = a + i * k;
    for (std::size_t p = 0; p < k; ++p) {
      const T av = arow[p];
      const T* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

// C[i, :] (+)= sum_p A[p, i] * B[p, :]; parallel over row blocks of C.
template <typename T>
void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c,
             bool accumulate) {
  constexpr std::size_t kRowBlock = 16;
  const std::size_t blocks = (m + kRowBlock - 1) / kRowBlock;
  const bool par = m * n * k >= kParallelWork && blocks > 1;
  (void)par;
#pragma omp parallel for schedule(static) if (par)
  for (Index bb = 0; bb < static_cast<Index>(blocks); ++bb) {
    const std::size_t i0 = static_cast<std::size_t>(bb) * kRowBlock;
    const std::size_t i1 = std::min(m, i0 + kRowBlock);
    if (!accumulate) std::fill(c + i0 * n, c + i1 * n, T(0));
    for (std::size_t p = 0; p < k; ++p) {
      const T* brow = b + p * n;
      const T* acol = a + p * m;
      for (std::size_t i = i0; i < i1; ++i) {
        const T av = acol[i];
        T* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  }
}

template <typename T>
std::vector<T> transposed(const T* x, std::size_t rows, std::size_t cols) {
  std::vector<T> out(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out[c * rows + r] = x[r * cols + c];
  return out;
}

}  // namespace

template <typename T>
void gemm(Trans ta, Trans tb, std::size_t m, std::size_t n, std::size_t k, const T* a,
          const T* b, T* c, bool accumulate) {
  if (m == 0 || n == 0) return;
  if (k == 0) {
    if (!accumulate) std::fill(c, c + m * n, T(0));
    return;
  }
  // B^T is stored n x k; materialise it k x n so the inner loop stays unit-stride.
  std::vector<T> bt;
  if (tb == Trans::yes) {
    bt = transposed(b, n, k);
    b = bt.data();
  }
  if (ta == Trans::no) {
    gemm_nn(m, n, k, a, b, c, accumulate);
  } else {
    gemm_tn(m, n, k, a, b, c, accumulate);
  }
}

template <typename T>
void softmax(const T* in, T* out, std::size_t outer, std::size_t n, std::size_t inner) {
  const std::size_t lanes = outer * inner;
  const bool par = lanes * n >= kParallelWork;
  (void)par;
#pragma omp parallel for schedule(static) if (par)
  for (Index ll = 0; ll < static_cast<Index>(lanes); ++ll) {
    const auto lane = static_cast<std::size_t>(ll);
    const std::size_t base = (lane / inner) * n * inner + lane % inner;
    T mx = in[base];
    for (std::size_t i = 1; i < n; ++i) mx = std::max(mx, in[base + i * inner]);
    T total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const T e = std::exp(in[base + i * inner] - mx);
      out[base + i * inner] = e;
      total += e;
    }
    const T inv = T(1) / total;
    for (std::size_t i = 0; i < n; ++i) out[base + i * inner] *= inv;
  }
}

template <typename T>
void layer_norm(const T* in, const T* gamma, const T* beta, T* out, T* mean, T* rstd,
                std::size_t rows, std::size_t n, T eps) {
  const bool par = rows * n >= kParallelWork;
  (void)par;
#pragma omp parallel for schedule(static) if (par)
  for (Index rr = 0; rr < static_cast<Index>(rows); ++rr) {
    const auto r = static_cast<std::size_t>(rr);
    const T* x = in + r * n;
    T* y = out + r * n;
    // Two-pass statistics in double keep float rows with large offsets stable.
    double mu = 0;
    for (std::size_t i = 0; i < n; ++i) mu += x[i];
    mu /= static_cast<double>(n);
    double var = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = x[i] - mu;
      var += d * d;
    }
    var /= static_cast<double>(n);
    const T rs = static_cast<T>(1.0 / std::sqrt(var + static_cast<double>(eps)));
    const T m = static_cast<T>(mu);
    for (std::size_t i = 0; i < n; ++i) y[i] = (x[i] - m) * rs * gamma[i] + beta[i];
    if (mean) mean[r] = m;
    if (rstd) rstd[r] = rs;
  }
}

int max_threads() {
#ifdef SCT_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef SCT_HAVE_OPENMP
  omp_set_num_threads(std::max(1, n));
#else
  (void)n;
#endif
}

#define SCT_INSTANTIATE(T)                                                                  \
  template void gemm<T>(Trans, Trans, std::size_t, std::size_t, std::size_t, const T*,    \
                        const T*, T*, bool);                                               \
  template void softmax<T>(const T*, T*, std::size_t, std::size_t, std::size_t);          \
  template void layer_norm<T>(const T*, const T*, const T*, T*, T*, T*, std::size_t,      \
                              std::size_t, T);
SCT_INSTANTIATE(float)
SCT_INSTANTIATE(double)
#undef SCT_INSTANTIATE

}  // namespace sct::kernels
