// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <numbers>

#include "sct/errors.hpp"
#include "sct/fft.hpp"
#include "sct/op_builder.hpp"
#include "sct/spectral.hpp"
#include "sct/spectral_kernels.hpp"

namespace sct::spectral {

namespace kernels {

namespace {

void check_lengths(LaneOp op, std::size_t n_in, std::size_t n_out) {
  const bool ok = (op == LaneOp::dct || op == LaneOp::idct) ? n_in == n_out
                  : op == LaneOp::compress                  ? n_out <= n_in
                                                            : n_out >= n_in;
  if (!ok || n_in == 0 || n_out == 0) throw ShapeError("apply_lanes: incompatible lane lengths");
}

void transform_lane(LaneOp op, const double* in, double* out, std::size_t n_in,
                    std::size_t n_out, std::vector<double>& scratch) {
  switch (op) {
    case LaneOp::dct:
      dct_plan(n_in).forward(in, out);
      break;
    case LaneOp::idct:
      dct_plan(n_in).inverse(in, out);
      break;
    case LaneOp::compress:
      scratch.resize(n_in);
      dct_plan(n_in).forward(in, scratch.data());
      dct_plan(n_out).inverse(scratch.data(), out);
      break;
    case LaneOp::compress_adjoint:
      scratch.assign(n_out, 0.0);
      dct_plan(n_in).forward(in, scratch.data());
      dct_plan(n_out).inverse(scratch.data(), out);
      break;
  }
}

}  // namespace

template <typename T>
void apply_lanes(LaneOp op, const T* in, T* out, std::size_t outer, std::size_t n_in,
                 std::size_t inner, std::size_t n_out, bool accumulate) {
  check_lengths(op, n_in, n_out);
  const std::size_t lanes = outer * inner;
  const bool par = lanes > 8 && lanes * n_in > (1u << 13);
  (void)par;
#pragma omp parallel if (par)
  {
    std::vector<double> src(n_in), dst(n_out), scratch;
#pragma omp for schedule(static)
    for (std::int64_t ll = 0; ll < static_cast<std::int64_t>(lanes); ++ll) {
      const auto lane = static_cast<std::size_t>(ll);
      const std::size_t o = lane / inner, r = lane % inner;
      const T* x = in + o * n_in * inner + r;
      T* y = out + o * n_out * inner + r;
      for (std::size_t i = 0; i < n_in; ++i) src[i] = static_cast<double>(x[i * inner]);
      transform_lane(op, src.data(), dst.data(), n_in, n_out, scratch);
      for (std::size_t i = 0; i < n_out; ++i) {
        y[i * inner] = static_cast<T>(accumulate ? y[i * inner] + dst[i] : dst[i]);
      }
    }
  }
}

namespace reference {

namespace {

// Row k of the orthonormal DCT-II matrix of length n, evaluated at sample i.
double dct_entry(std::size_t k, std::size_t i, std::size_t n) {
  const double a = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n));
  return a * std::cos(std::numbers::pi * static_cast<double>(k) *
                      (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(n)));
}

// Dense matrix for one lane operation: out = M in, M is n_out x n_in.
std::vector<double> lane_matrix(LaneOp op, std::size_t n_in, std::size_t n_out) {
  std::vector<double> m(n_out * n_in, 0.0);
  for (std::size_t r = 0; r < n_out; ++r) {
    for (std::size_t c = 0; c < n_in; ++c) {
      double v = 0;
      switch (op) {
        case LaneOp::dct: v = dct_entry(r, c, n_in); break;
        case LaneOp::idct: v = dct_entry(c, r, n_in); break;
        case LaneOp::compress:
          // sum over kept frequencies k < n_out of idct_f[r,k] * dct_F[k,c]
          for (std::size_t k = 0; k < n_out; ++k) v += dct_entry(k, r, n_out) * dct_entry(k, c, n_in);
          break;
        case LaneOp::compress_adjoint:
          for (std::size_t k = 0; k < n_in; ++k) v += dct_entry(k, r, n_out) * dct_entry(k, c, n_in);
          break;
      }
      m[r * n_in + c] = v;
    }
  }
  return m;
}

}  // namespace

template <typename T>
void apply_lanes(LaneOp op, const T* in, T* out, std::size_t outer, std::size_t n_in,
                 std::size_t inner, std::size_t n_out, bool accumulate) {
  check_lengths(op, n_in, n_out);
  const auto m = lane_matrix(op, n_in, n_out);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t r = 0; r < inner; ++r) {
      const T* x = in + o * n_in * inner + r;
      T* y = out + o * n_out * inner + r;
      for (std::size_t i = 0; i < n_out; ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < n_in; ++j) acc += m[i * n_in + j] * static_cast<double>(x[j * inner]);
        y[i * inner] = static_cast<T>(accumulate ? y[i * inner] + acc : acc);
      }
    }
  }
}

}  // namespace reference

#define SCT_INSTANTIATE(T)                                                                   \
  template void apply_lanes<T>(LaneOp, const T*, T*, std::size_t, std::size_t, std::size_t, \
                               std::size_t, bool);                                          \
  template void reference::apply_lanes<T>(LaneOp, const T*, T*, std::size_t, std::size_t,   \
                                          std::size_t, std::size_t, bool);
SCT_INSTANTIATE(float)
SCT_INSTANTIATE(double)
#undef SCT_INSTANTIATE

}  // namespace kernels

namespace {

struct Lanes {
  std::size_t outer = 1, n = 1, inner = 1, axis = 0;
};

template <typename T>
Lanes lanes_of(const Tensor<T>& x, int axis) {
  const int r = static_cast<int>(x.rank());
  const int a = axis < 0 ? axis + r : axis;
  if (a < 0 || a >= r) throw ShapeError("spectral op: axis out of range for " + shape_str(x.shape()));
  Lanes l;
  l.axis = static_cast<std::size_t>(a);
  for (std::size_t i = 0; i < l.axis; ++i) l.outer *= x.shape()[i];
  l.n = x.shape()[l.axis];
  for (std::size_t i = l.axis + 1; i < x.rank(); ++i) l.inner *= x.shape()[i];
  return l;
}

}  // namespace

template <typename T>
Tensor<T> dct_axis(const Tensor<T>& x, int axis) {
  using kernels::LaneOp;
  const Lanes l = lanes_of(x, axis);
  std::vector<T> out(x.numel());
  kernels::apply_lanes(LaneOp::dct, x.data().data(), out.data(), l.outer, l.n, l.inner, l.n, false);
  return record_op<T>("dct", x.shape(), std::move(out), {x}, [x, l](const TensorNode<T>& res) {
    if (T* g = grad_sink(x)) {
      kernels::apply_lanes(LaneOp::idct, res.grad.data(), g, l.outer, l.n, l.inner, l.n, true);
    }
  });
}

template <typename T>
Tensor<T> spectral_compress(const Tensor<T>& x, int axis, double sigma) {
  using kernels::LaneOp;
  const Lanes l = lanes_of(x, axis);
  const std::size_t f = compressed_length(l.n, sigma);
  Shape shape = x.shape();
  shape[l.axis] = f;
  std::vector<T> out(l.outer * f * l.inner);
  kernels::apply_lanes(LaneOp::compress, x.data().data(), out.data(), l.outer, l.n, l.inner, f,
                       false);
  return record_op<T>("spectral_compress", std::move(shape), std::move(out), {x},
                      [x, l, f](const TensorNode<T>& res) {
                        if (T* g = grad_sink(x)) {
                          kernels::apply_lanes(LaneOp::compress_adjoint, res.grad.data(), g,
                                               l.outer, f, l.inner, l.n, true);
                        }
                      });
}

template Tensor<float> dct_axis(const Tensor<float>&, int);
template Tensor<double> dct_axis(const Tensor<double>&, int);
template Tensor<float> spectral_compress(const Tensor<float>&, int, double);
template Tensor<double> spectral_compress(const Tensor<double>&, int, double);

}  // namespace sct::spectral
