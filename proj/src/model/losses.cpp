// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sct/errors.hpp"
#include "sct/model.hpp"
#include "sct/ops.hpp"
#include "sct/spectral.hpp"

namespace sct::model {

namespace {

template <typename T>
void check_pair(const Tensor<T>& pred, const Tensor<T>& gt, const char* op) {
  if (pred.shape() != gt.shape()) {
    throw ContractError(std::string(op) + ": shapes differ " + shape_str(pred.shape()) + " vs " +
                        shape_str(gt.shape()));
  }
  if (pred.rank() < 1 || pred.dim(-1) != 3) throw ShapeError(std::string(op) + ": last axis must be 3");
}

}  // namespace

template <typename T>
Tensor<T> mpjpe_loss(const Tensor<T>& pred, const Tensor<T>& gt) {
  check_pair(pred, gt, "mpjpe_loss");
  return mean(norm_last(pred - gt));
}

template <typename T>
Tensor<T> fd_loss(const Tensor<T>& pred, const Tensor<T>& gt) {
  check_pair(pred, gt, "fd_loss");
  if (pred.rank() != 4) throw ShapeError("fd_loss expects [B, F, J, 3]");
  // DCT is linear, so DCT(pred) - DCT(gt) = DCT(pred - gt).
  return mean(norm_last(spectral::dct_axis(pred - gt, 1)));
}

template <typename T>
Tensor<T> total_loss(const Tensor<T>& pred, const Tensor<T>& gt, double lambda) {
  if (!(lambda >= 0.0)) throw ContractError("total_loss: lambda must be non-negative");
  const auto m = mpjpe_loss(pred, gt);
  if (lambda == 0.0) return m;
  return m + scale(fd_loss(pred, gt), static_cast<T>(lambda));
}

#define SCT_INSTANTIATE(T)                                                \
  template Tensor<T> mpjpe_loss(const Tensor<T>&, const Tensor<T>&);      \
  template Tensor<T> fd_loss(const Tensor<T>&, const Tensor<T>&);         \
  template Tensor<T> total_loss(const Tensor<T>&, const Tensor<T>&, double);
SCT_INSTANTIATE(float)
SCT_INSTANTIATE(double)
#undef SCT_INSTANTIATE

}  // namespace sct::model
