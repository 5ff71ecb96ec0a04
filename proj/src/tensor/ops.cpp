// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sct/ops.hpp"

#include <cmath>
#include <cstring>
#include <numeric>

#include "sct/errors.hpp"
#include "sct/kernels.hpp"
#include "sct/op_builder.hpp"

namespace sct {

namespace {

using kernels::Trans;

std::size_t normalize_axis(int axis, std::size_t rank) {
  const int r = static_cast<int>(rank);
  const int a = axis < 0 ? axis + r : axis;
  if (a < 0 || a >= r) {
    throw ShapeError("axis " + std::to_string(axis) + " invalid for rank " + std::to_string(rank));
  }
  return static_cast<std::size_t>(a);
}

// (outer, n, inner) factorisation around one axis.
struct AxisView {
  std::size_t outer = 1, n = 1, inner = 1;
};

AxisView axis_view(const Shape& shape, std::size_t axis) {
  AxisView v;
  for (std::size_t i = 0; i < axis; ++i) v.outer *= shape[i];
  v.n = shape[axis];
  for (std::size_t i = axis + 1; i < shape.size(); ++i) v.inner *= shape[i];
  return v;
}

std::vector<std::size_t> strides_of(const Shape& shape) {
  std::vector<std::size_t> s(shape.size(), 1);
  for (std::size_t i = shape.size(); i-- > 1;) s[i - 1] = s[i] * shape[i];
  return s;
}

// Numpy broadcasting of two shapes; per output axis the stride into each
// operand, zero where that operand is broadcast.
struct Broadcast {
  Shape out;
  std::vector<std::size_t> stride_a, stride_b;
};

Broadcast broadcast_shapes(const Shape& a, const Shape& b, const char* op) {
  const std::size_t r = std::max(a.size(), b.size());
  Shape pa(r - a.size(), 1), pb(r - b.size(), 1);
  pa.insert(pa.end(), a.begin(), a.end());
  pb.insert(pb.end(), b.begin(), b.end());
  Broadcast bc;
  bc.out.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (pa[i] != pb[i] && pa[i] != 1 && pb[i] != 1) {
      throw ShapeError(std::string(op) + ": cannot broadcast " + shape_str(a) + " with " +
                       shape_str(b));
    }
    bc.out[i] = std::max(pa[i], pb[i]);
  }
  const auto sa = strides_of(pa);
  const auto sb = strides_of(pb);
  bc.stride_a.resize(r);
  bc.stride_b.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    bc.stride_a[i] = pa[i] == 1 ? 0 : sa[i];
    bc.stride_b[i] = pb[i] == 1 ? 0 : sb[i];
  }
  return bc;
}

// Calls fn(out_index, a_index, b_index) for every output element.
template <typename Fn>
void for_each_broadcast(const Broadcast& bc, Fn&& fn) {
  const std::size_t r = bc.out.size();
  const std::size_t total = shape_numel(bc.out);
  if (r == 0) {
    fn(0, 0, 0);
    return;
  }
  const std::size_t last = bc.out[r - 1];
  const std::size_t la = bc.stride_a[r - 1], lb = bc.stride_b[r - 1];
  std::vector<std::size_t> idx(r, 0);
  std::size_t ia = 0, ib = 0;
  for (std::size_t o = 0; o < total; o += last) {
    for (std::size_t j = 0; j < last; ++j) fn(o + j, ia + j * la, ib + j * lb);
    // Advance the odometer over all axes except the last.
    for (std::size_t ax = r - 1; ax-- > 0;) {
      ++idx[ax];
      ia += bc.stride_a[ax];
      ib += bc.stride_b[ax];
      if (idx[ax] < bc.out[ax]) break;
      ia -= bc.stride_a[ax] * idx[ax];
      ib -= bc.stride_b[ax] * idx[ax];
      idx[ax] = 0;
    }
  }
}

enum class BinaryKind { add, sub, mul };

template <typename T>
Tensor<T> binary(const Tensor<T>& a, const Tensor<T>& b, BinaryKind kind) {
  const char* name = kind == BinaryKind::add ? "add" : kind == BinaryKind::sub ? "sub" : "mul";
  auto bc = broadcast_shapes(a.shape(), b.shape(), name);
  std::vector<T> out(shape_numel(bc.out));
  const T* pa = a.data().data();
  const T* pb = b.data().data();
  const bool same = a.shape() == b.shape();
  if (same) {
    const std::size_t n = out.size();
    switch (kind) {
      case BinaryKind::add:
        for (std::size_t i = 0; i < n; ++i) out[i] = pa[i] + pb[i];
        break;
      case BinaryKind::sub:
        for (std::size_t i = 0; i < n; ++i) out[i] = pa[i] - pb[i];
        break;
      case BinaryKind::mul:
        for (std::size_t i = 0; i < n; ++i) out[i] = pa[i] * pb[i];
        break;
    }
  } else {
    for_each_broadcast(bc, [&](std::size_t o, std::size_t ia, std::size_t ib) {
      switch (kind) {
        case BinaryKind::add: out[o] = pa[ia] + pb[ib]; break;
        case BinaryKind::sub: out[o] = pa[ia] - pb[ib]; break;
        case BinaryKind::mul: out[o] = pa[ia] * pb[ib]; break;
      }
    });
  }
  Shape shape = bc.out;
  return record_op<T>(name, std::move(shape), std::move(out), {a, b},
                      [a, b, kind, bc, same](const TensorNode<T>& res) {
                        T* ga = grad_sink(a);
                        T* gb = grad_sink(b);
                        const T* g = res.grad.data();
                        const T* va = a.data().data();
                        const T* vb = b.data().data();
                        const T sign = kind == BinaryKind::sub ? T(-1) : T(1);
                        auto step = [&](std::size_t o, std::size_t ia, std::size_t ib) {
                          if (kind == BinaryKind::mul) {
                            if (ga) ga[ia] += g[o] * vb[ib];
                            if (gb) gb[ib] += g[o] * va[ia];
                          } else {
                            if (ga) ga[ia] += g[o];
                            if (gb) gb[ib] += sign * g[o];
                          }
                        };
                        if (same) {
                          for (std::size_t i = 0; i < res.grad.size(); ++i) step(i, i, i);
                        } else {
                          for_each_broadcast(bc, step);
                        }
                      });
}

// dst = src permuted (output axis i is input axis perm[i]); += when accumulate.
template <typename T>
void permute_copy(const T* src, const Shape& in_shape, const std::vector<std::size_t>& perm,
                  T* dst, bool accumulate) {
  const std::size_t r = in_shape.size();
  const auto in_strides = strides_of(in_shape);
  Shape out_shape(r);
  std::vector<std::size_t> gather(r);
  for (std::size_t i = 0; i < r; ++i) {
    out_shape[i] = in_shape[perm[i]];
    gather[i] = in_strides[perm[i]];
  }
  const std::size_t total = shape_numel(out_shape);
  // Inner run: contiguous block when the last axis stays last.
  const std::size_t last = out_shape[r - 1];
  const bool block = perm[r - 1] == r - 1;
  std::vector<std::size_t> idx(r, 0);
  std::size_t src_off = 0;
  for (std::size_t o = 0; o < total; o += last) {
    if (block) {
      if (accumulate) {
        for (std::size_t j = 0; j < last; ++j) dst[o + j] += src[src_off + j];
      } else {
        std::memcpy(dst + o, src + src_off, last * sizeof(T));
      }
    } else {
      const std::size_t s = gather[r - 1];
      for (std::size_t j = 0; j < last; ++j) {
        dst[o + j] = accumulate ? dst[o + j] + src[src_off + j * s] : src[src_off + j * s];
      }
    }
    for (std::size_t ax = r - 1; ax-- > 0;) {
      ++idx[ax];
      src_off += gather[ax];
      if (idx[ax] < out_shape[ax]) break;
      src_off -= gather[ax] * idx[ax];
      idx[ax] = 0;
    }
  }
}

}  // namespace

template <typename T>
Tensor<T> matmul(const Tensor<T>& a, const Tensor<T>& b) {
  if (a.rank() < 2 || b.rank() < 2) {
    throw ShapeError("matmul needs rank >= 2 operands, got " + shape_str(a.shape()) + " x " +
                     shape_str(b.shape()));
  }
  const std::size_t m = a.dim(-2), k = a.dim(-1), n = b.dim(-1);
  if (b.dim(-2) != k) {
    throw ShapeError("matmul inner dimensions disagree: " + shape_str(a.shape()) + " x " +
                     shape_str(b.shape()));
  }
  const Shape batch_a(a.shape().begin(), a.shape().end() - 2);
  const Shape batch_b(b.shape().begin(), b.shape().end() - 2);

  if (batch_b.empty()) {
    // [..., m, k] x [k, n]: one GEMM over all rows of a.
    const std::size_t rows = a.numel() / k;
    std::vector<T> out(rows * n);
    kernels::gemm(Trans::no, Trans::no, rows, n, k, a.data().data(), b.data().data(),
                  out.data(), false);
    Shape shape = batch_a;
    shape.push_back(m);
    shape.push_back(n);
    return record_op<T>("matmul", std::move(shape), std::move(out), {a, b},
                        [a, b, rows, n, k](const TensorNode<T>& res) {
                          const T* g = res.grad.data();
                          if (T* ga = grad_sink(a)) {
                            kernels::gemm(Trans::no, Trans::yes, rows, k, n, g, b.data().data(),
                                          ga, true);
                          }
                          if (T* gb = grad_sink(b)) {
                            kernels::gemm(Trans::yes, Trans::no, k, n, rows, a.data().data(), g,
                                          gb, true);
                          }
                        });
  }

  Broadcast bc;
  try {
    bc = broadcast_shapes(batch_a.empty() ? Shape{1} : batch_a,
                          batch_b.empty() ? Shape{1} : batch_b, "matmul");
  } catch (const ShapeError&) {
    throw ShapeError("matmul batch dimensions not broadcastable: " + shape_str(a.shape()) +
                     " x " + shape_str(b.shape()));
  }
  // Offsets of each batch entry, in units of whole matrices.
  std::vector<std::size_t> off_a, off_b;
  for_each_broadcast(bc, [&](std::size_t, std::size_t ia, std::size_t ib) {
    off_a.push_back(ia);
    off_b.push_back(ib);
  });
  const std::size_t batches = off_a.size();
  std::vector<T> out(batches * m * n);
  for (std::size_t i = 0; i < batches; ++i) {
    kernels::gemm(Trans::no, Trans::no, m, n, k, a.data().data() + off_a[i] * m * k,
                  b.data().data() + off_b[i] * k * n, out.data() + i * m * n, false);
  }
  Shape shape = bc.out;
  shape.push_back(m);
  shape.push_back(n);
  return record_op<T>("matmul", std::move(shape), std::move(out), {a, b},
                      [a, b, m, n, k, off_a, off_b](const TensorNode<T>& res) {
                        T* ga = grad_sink(a);
                        T* gb = grad_sink(b);
                        const T* g = res.grad.data();
                        for (std::size_t i = 0; i < off_a.size(); ++i) {
                          const T* gi = g + i * m * n;
                          if (ga) {
                            kernels::gemm(Trans::no, Trans::yes, m, k, n, gi,
                                          b.data().data() + off_b[i] * k * n,
                                          ga + off_a[i] * m * k, true);
                          }
                          if (gb) {
                            kernels::gemm(Trans::yes, Trans::no, k, n, m,
                                          a.data().data() + off_a[i] * m * k, gi,
                                          gb + off_b[i] * k * n, true);
                          }
                        }
                      });
}

template <typename T>
Tensor<T> add(const Tensor<T>& a, const Tensor<T>& b) {
  return binary(a, b, BinaryKind::add);
}

template <typename T>
Tensor<T> sub(const Tensor<T>& a, const Tensor<T>& b) {
  return binary(a, b, BinaryKind::sub);
}

template <typename T>
Tensor<T> mul(const Tensor<T>& a, const Tensor<T>& b) {
  return binary(a, b, BinaryKind::mul);
}

template <typename T>
Tensor<T> scale(const Tensor<T>& x, T factor) {
  std::vector<T> out(x.data().begin(), x.data().end());
  for (auto& v : out) v *= factor;
  return record_op<T>("scale", x.shape(), std::move(out), {x},
                      [x, factor](const TensorNode<T>& res) {
                        T* gx = grad_sink(x);
                        for (std::size_t i = 0; i < res.grad.size(); ++i)
                          gx[i] += factor * res.grad[i];
                      });
}

template <typename T>
Tensor<T> reshape(const Tensor<T>& x, Shape shape) {
  if (shape_numel(shape) != x.numel()) {
    throw ShapeError("reshape " + shape_str(x.shape()) + " -> " + shape_str(shape) +
                     " changes the element count");
  }
  std::vector<T> out(x.data().begin(), x.data().end());
  return record_op<T>("reshape", std::move(shape), std::move(out), {x},
                      [x](const TensorNode<T>& res) {
                        T* gx = grad_sink(x);
                        for (std::size_t i = 0; i < res.grad.size(); ++i) gx[i] += res.grad[i];
                      });
}

template <typename T>
Tensor<T> permute(const Tensor<T>& x, const std::vector<std::size_t>& perm) {
  const std::size_t r = x.rank();
  if (perm.size() != r) throw ShapeError("permute: permutation rank mismatch");
  std::vector<std::size_t> inverse(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    if (perm[i] >= r || inverse[perm[i]] != r) throw ShapeError("permute: invalid permutation");
    inverse[perm[i]] = i;
  }
  Shape out_shape(r);
  for (std::size_t i = 0; i < r; ++i) out_shape[i] = x.shape()[perm[i]];
  std::vector<T> out(x.numel());
  permute_copy(x.data().data(), x.shape(), perm, out.data(), false);
  return record_op<T>("permute", out_shape, std::move(out), {x},
                      [x, inverse, out_shape](const TensorNode<T>& res) {
                        permute_copy(res.grad.data(), out_shape, inverse, grad_sink(x), true);
                      });
}

template <typename T>
Tensor<T> concat(const Tensor<T>& a, const Tensor<T>& b, int axis) {
  if (a.rank() != b.rank()) throw ShapeError("concat: rank mismatch");
  const std::size_t ax = normalize_axis(axis, a.rank());
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (i != ax && a.shape()[i] != b.shape()[i]) {
      throw ShapeError("concat: " + shape_str(a.shape()) + " and " + shape_str(b.shape()) +
                       " differ off the concat axis");
    }
  }
  const auto va = axis_view(a.shape(), ax);
  const auto vb = axis_view(b.shape(), ax);
  const std::size_t ra = va.n * va.inner, rb = vb.n * vb.inner;
  std::vector<T> out((ra + rb) * va.outer);
  for (std::size_t o = 0; o < va.outer; ++o) {
    std::copy_n(a.data().data() + o * ra, ra, out.data() + o * (ra + rb));
    std::copy_n(b.data().data() + o * rb, rb, out.data() + o * (ra + rb) + ra);
  }
  Shape shape = a.shape();
  shape[ax] += b.shape()[ax];
  const std::size_t outer = va.outer;
  return record_op<T>("concat", std::move(shape), std::move(out), {a, b},
                      [a, b, ra, rb, outer](const TensorNode<T>& res) {
                        T* ga = grad_sink(a);
                        T* gb = grad_sink(b);
                        for (std::size_t o = 0; o < outer; ++o) {
                          const T* g = res.grad.data() + o * (ra + rb);
                          if (ga)
                            for (std::size_t i = 0; i < ra; ++i) ga[o * ra + i] += g[i];
                          if (gb)
                            for (std::size_t i = 0; i < rb; ++i) gb[o * rb + i] += g[ra + i];
                        }
                      });
}

template <typename T>
Tensor<T> slice(const Tensor<T>& x, int axis, std::size_t start, std::size_t length) {
  const std::size_t ax = normalize_axis(axis, x.rank());
  if (length == 0 || start + length > x.shape()[ax]) {
    throw ShapeError("slice [" + std::to_string(start) + ", +" + std::to_string(length) +
                     ") out of range on axis of size " + std::to_string(x.shape()[ax]));
  }
  const auto v = axis_view(x.shape(), ax);
  std::vector<T> out(v.outer * length * v.inner);
  for (std::size_t o = 0; o < v.outer; ++o) {
    std::copy_n(x.data().data() + (o * v.n + start) * v.inner, length * v.inner,
                out.data() + o * length * v.inner);
  }
  Shape shape = x.shape();
  shape[ax] = length;
  return record_op<T>("slice", std::move(shape), std::move(out), {x},
                      [x, v, start, length](const TensorNode<T>& res) {
                        T* gx = grad_sink(x);
                        for (std::size_t o = 0; o < v.outer; ++o) {
                          const T* g = res.grad.data() + o * length * v.inner;
                          T* dst = gx + (o * v.n + start) * v.inner;
                          for (std::size_t i = 0; i < length * v.inner; ++i) dst[i] += g[i];
                        }
                      });
}

template <typename T>
Tensor<T> softmax(const Tensor<T>& x, int axis) {
  const std::size_t ax = normalize_axis(axis, x.rank());
  const auto v = axis_view(x.shape(), ax);
  std::vector<T> out(x.numel());
  kernels::softmax(x.data().data(), out.data(), v.outer, v.n, v.inner);
  return record_op<T>("softmax", x.shape(), std::move(out), {x},
                      [x, v](const TensorNode<T>& res) {
                        T* gx = grad_sink(x);
                        const T* y = res.data.data();
                        const T* g = res.grad.data();
                        for (std::size_t o = 0; o < v.outer; ++o) {
                          for (std::size_t r = 0; r < v.inner; ++r) {
                            const std::size_t base = o * v.n * v.inner + r;
                            T dot = 0;
                            for (std::size_t i = 0; i < v.n; ++i)
                              dot += g[base + i * v.inner] * y[base + i * v.inner];
                            for (std::size_t i = 0; i < v.n; ++i) {
                              const std::size_t p = base + i * v.inner;
                              gx[p] += y[p] * (g[p] - dot);
                            }
                          }
                        }
                      });
}

template <typename T>
Tensor<T> layer_norm(const Tensor<T>& x, const Tensor<T>& gamma, const Tensor<T>& beta, T eps) {
  const std::size_t n = x.dim(-1);
  if (gamma.numel() != n || beta.numel() != n) {
    throw ShapeError("layer_norm: gamma/beta of " + shape_str(gamma.shape()) + "/" +
                     shape_str(beta.shape()) + " do not match last axis of " +
                     shape_str(x.shape()));
  }
  const std::size_t rows = x.numel() / n;
  std::vector<T> out(x.numel());
  auto stats = std::make_shared<std::vector<T>>(2 * rows);
  kernels::layer_norm(x.data().data(), gamma.data().data(), beta.data().data(), out.data(),
                      stats->data(), stats->data() + rows, rows, n, eps);
  return record_op<T>(
      "layer_norm", x.shape(), std::move(out), {x, gamma, beta},
      [x, gamma, beta, stats, rows, n](const TensorNode<T>& res) {
        T* gx = grad_sink(x);
        T* gg = grad_sink(gamma);
        T* gb = grad_sink(beta);
        const T* mu = stats->data();
        const T* rs = stats->data() + rows;
        const T* xs = x.data().data();
        const T* gam = gamma.data().data();
        std::vector<T> dxhat(n);
        for (std::size_t r = 0; r < rows; ++r) {
          const T* g = res.grad.data() + r * n;
          const T* xr = xs + r * n;
          T mean_d = 0, mean_dx = 0;
          for (std::size_t i = 0; i < n; ++i) {
            const T xhat = (xr[i] - mu[r]) * rs[r];
            if (gg) gg[i] += g[i] * xhat;
            if (gb) gb[i] += g[i];
            dxhat[i] = g[i] * gam[i];
            mean_d += dxhat[i];
            mean_dx += dxhat[i] * xhat;
          }
          if (!gx) continue;
          mean_d /= static_cast<T>(n);
          mean_dx /= static_cast<T>(n);
          for (std::size_t i = 0; i < n; ++i) {
            const T xhat = (xr[i] - mu[r]) * rs[r];
            gx[r * n + i] += rs[r] * (dxhat[i] - mean_d - xhat * mean_dx);
          }
        }
      });
}

template <typename T>
Tensor<T> gelu(const Tensor<T>& x) {
  std::vector<T> out(x.numel());
  const T* v = x.data().data();
  const T inv_sqrt2 = T(1) / std::sqrt(T(2));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = T(0.5) * v[i] * (T(1) + std::erf(v[i] * inv_sqrt2));
  }
  return record_op<T>("gelu", x.shape(), std::move(out), {x},
                      [x, inv_sqrt2](const TensorNode<T>& res) {
                        T* gx = grad_sink(x);
                        const T* v = x.data().data();
                        const T inv_sqrt_2pi = T(1) / std::sqrt(T(2) * T(M_PI));
                        for (std::size_t i = 0; i < res.grad.size(); ++i) {
                          const T cdf = T(0.5) * (T(1) + std::erf(v[i] * inv_sqrt2));
                          const T pdf = inv_sqrt_2pi * std::exp(T(-0.5) * v[i] * v[i]);
                          gx[i] += res.grad[i] * (cdf + v[i] * pdf);
                        }
                      });
}

template <typename T>
Tensor<T> norm_last(const Tensor<T>& x) {
  const std::size_t n = x.dim(-1);
  const std::size_t rows = x.numel() / n;
  std::vector<T> out(rows);
  const T* v = x.data().data();
  for (std::size_t r = 0; r < rows; ++r) {
    T s = 0;
    for (std::size_t i = 0; i < n; ++i) s += v[r * n + i] * v[r * n + i];
    out[r] = std::sqrt(s);
  }
  Shape shape(x.shape().begin(), x.shape().end() - 1);
  if (shape.empty()) shape = {1};
  return record_op<T>("norm_last", std::move(shape), std::move(out), {x},
                      [x, n, rows](const TensorNode<T>& res) {
                        T* gx = grad_sink(x);
                        const T* v = x.data().data();
                        for (std::size_t r = 0; r < rows; ++r) {
                          const T len = res.data[r];
                          if (len == T(0)) continue;
                          const T f = res.grad[r] / len;
                          for (std::size_t i = 0; i < n; ++i) gx[r * n + i] += f * v[r * n + i];
                        }
                      });
}

template <typename T>
Tensor<T> sum(const Tensor<T>& x) {
  T total = 0;
  for (T v : x.data()) total += v;
  return record_op<T>("sum", {1}, {total}, {x}, [x](const TensorNode<T>& res) {
    T* gx = grad_sink(x);
    for (std::size_t i = 0; i < x.numel(); ++i) gx[i] += res.grad[0];
  });
}

template <typename T>
Tensor<T> mean(const Tensor<T>& x) {
  return scale(sum(x), T(1) / static_cast<T>(x.numel()));
}

template <typename T>
Tensor<T> dropout(const Tensor<T>& x, double rate, std::mt19937_64& rng) {
  if (rate < 0.0 || rate >= 1.0) throw ContractError("dropout rate must be in [0, 1)");
  if (rate == 0.0) return x;
  std::bernoulli_distribution keep(1.0 - rate);
  const T factor = static_cast<T>(1.0 / (1.0 - rate));
  auto mask = std::make_shared<std::vector<T>>(x.numel());
  std::vector<T> out(x.numel());
  for (std::size_t i = 0; i < out.size(); ++i) {
    (*mask)[i] = keep(rng) ? factor : T(0);
    out[i] = x.data()[i] * (*mask)[i];
  }
  return record_op<T>("dropout", x.shape(), std::move(out), {x},
                      [x, mask](const TensorNode<T>& res) {
                        T* gx = grad_sink(x);
                        for (std::size_t i = 0; i < res.grad.size(); ++i)
                          gx[i] += res.grad[i] * (*mask)[i];
                      });
}

#define SCT_INSTANTIATE(T)                                                                   \
  template Tensor<T> matmul(const Tensor<T>&, const Tensor<T>&);                           \
  template Tensor<T> add(const Tensor<T>&, const Tensor<T>&);                              \
  template Tensor<T> sub(const Tensor<T>&, const Tensor<T>&);                              \
  template Tensor<T> mul(const Tensor<T>&, const Tensor<T>&);                              \
  template Tensor<T> scale(const Tensor<T>&, T);                                           \
  template Tensor<T> reshape(const Tensor<T>&, Shape);                                     \
  template Tensor<T> permute(const Tensor<T>&, const std::vector<std::size_t>&);           \
  template Tensor<T> concat(const Tensor<T>&, const Tensor<T>&, int);                      \
  template Tensor<T> slice(const Tensor<T>&, int, std::size_t, std::size_t);               \
  template Tensor<T> softmax(const Tensor<T>&, int);                                       \
  template Tensor<T> layer_norm(const Tensor<T>&, const Tensor<T>&, const Tensor<T>&, T);  \
  template Tensor<T> gelu(const Tensor<T>&);                                               \
  template Tensor<T> norm_last(const Tensor<T>&);                                          \
  template Tensor<T> sum(const Tensor<T>&);                                                \
  template Tensor<T> mean(const Tensor<T>&);                                               \
  template Tensor<T> dropout(const Tensor<T>&, double, std::mt19937_64&);
SCT_INSTANTIATE(float)
SCT_INSTANTIATE(double)
#undef SCT_INSTANTIATE

}  // namespace sct
