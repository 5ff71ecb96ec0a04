// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

// Inner loops of the tensor engine. The functions in `sct::kernels` are the
// production path (OpenMP-parallel when built with SCT_HAVE_OPENMP); the
// ones in `sct::kernels::reference` are plain serial loops kept as oracles
// for tests and as the baseline of bench/kernel_bench.
namespace sct::kernels {

enum class Trans { no, yes };

// C (m x n) = op(A) * op(B), or += when accumulate. Row-major, contiguous.
// op(A) is m x k; A is stored k x m when ta == yes. Same for B.
template <typename T>
void gemm(Trans ta, Trans tb, std::size_t m, std::size_t n, std::size_t k, const T* a,
          const T* b, T* c, bool accumulate);

// Softmax over the middle index of an (outer, n, inner) view.
template <typename T>
void softmax(const T* in, T* out, std::size_t outer, std::size_t n, std::size_t inner);

// Row-wise LayerNorm. mean/rstd receive per-row statistics (may be null).
template <typename T>
void layer_norm(const T* in, const T* gamma, const T* beta, T* out, T* mean, T* rstd,
                std::size_t rows, std::size_t n, T eps);

int max_threads();
void set_threads(int n);

namespace reference {

template <typename T>
void gemm(Trans ta, Trans tb, std::size_t m, std::size_t n, std::size_t k, const T* a,
          const T* b, T* c, bool accumulate);

template <typename T>
void softmax(const T* in, T* out, std::size_t outer, std::size_t n, std::size_t inner);

template <typename T>
void layer_norm(const T* in, const T* gamma, const T* beta, T* out, T* mean, T* rstd,
                std::size_t rows, std::size_t n, T eps);

}  // namespace reference
}  // namespace sct::kernels
