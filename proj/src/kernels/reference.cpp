// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "sct/kernels.hpp"

namespace sct::kernels::reference {

template <typename T>
void gemm(Trans ta, Trans tb, std::size_t m, std::size_t n, std::size_t k, const T* a,
          const T* b, T* c, bool accumulate) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T acc = 0;
      for (std::size_t p = 0; p < k; ++p) {
        const T av = ta == Trans::no ? a[i * k + p] : a[p * m + i];
        const T bv = tb == Trans::no ? b[p * n + j] : b[j * k + p];
        acc += av * bv;
      }
      c[i * n + j] = accumulate ? c[i * n + j] + acc : acc;
    }
  }
}

template <typename T>
void softmax(const T* in, T* out, std::size_t outer, std::size_t n, std::size_t inner) {
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t r = 0; r < inner; ++r) {
      const std::size_t base = o * n * inner + r;
      T mx = in[base];
      for (std::size_t i = 1; i < n; ++i) mx = std::max(mx, in[base + i * inner]);
      T total = 0;
      for (std::size_t i = 0; i < n; ++i) {
        out[base + i * inner] = std::exp(in[base + i * inner] - mx);
        total += out[base + i * inner];
      }
      for (std::size_t i = 0; i < n; ++i) out[base + i * inner] /= total;
    }
  }
}

template <typename T>
void layer_norm(const T* in, const T* gamma, const T* beta, T* out, T* mean, T* rstd,
                std::size_t rows, std::size_t n, T eps) {
  for (std::size_t r = 0; r < rows; ++r) {
    const T* x = in + r * n;
    T mu = 0;
    for (std::size_t i = 0; i < n; ++i) mu += x[i];
    mu /= static_cast<T>(n);
    T var = 0;
    for (std::size_t i = 0; i < n; ++i) var += (x[i] - mu) * (x[i] - mu);
    var /= static_cast<T>(n);
    const T rs = T(1) / std::sqrt(var + eps);
    for (std::size_t i = 0; i < n; ++i) out[r * n + i] = (x[i] - mu) * rs * gamma[i] + beta[i];
    if (mean) mean[r] = mu;
    if (rstd) rstd[r] = rs;
  }
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

}  // namespace sct::kernels::reference
