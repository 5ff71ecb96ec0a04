// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

// Batched 1-D transforms over the middle axis of an (outer, n, inner) array.
// Every lane (outer x inner of them) is independent; the production path
// runs lanes in parallel with FFT-based transforms, the reference path uses
// dense O(n^2) cosine sums.
namespace sct::spectral::kernels {

enum class LaneOp {
  dct,               // n -> n
  idct,              // n -> n
  compress,          // F -> f: idct_f(dct_F(x)[0:f])
  compress_adjoint,  // f -> F: idct_F(pad_F(dct_f(y)))
};

template <typename T>
void apply_lanes(LaneOp op, const T* in, T* out, std::size_t outer, std::size_t n_in,
                 std::size_t inner, std::size_t n_out, bool accumulate);

namespace reference {
template <typename T>
void apply_lanes(LaneOp op, const T* in, T* out, std::size_t outer, std::size_t n_in,
                 std::size_t inner, std::size_t n_out, bool accumulate);
}

}  // namespace sct::spectral::kernels
