// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "sct/tensor.hpp"

namespace sct {

// AdamW with decoupled weight decay and bias-corrected moments.
template <typename T>
struct AdamWState {
  std::vector<std::vector<T>> first_moment;
  std::vector<std::vector<T>> second_moment;
  std::size_t step = 0;
  double lr = 2e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

// Moments are sized lazily on the first step. Parameters without a gradient
// are treated as having a zero gradient (decay still applies).
template <typename T>
void adamw_step(std::span<Tensor<T>> params, AdamWState<T>& state);

extern template void adamw_step<float>(std::span<Tensor<float>>, AdamWState<float>&);
extern template void adamw_step<double>(std::span<Tensor<double>>, AdamWState<double>&);

}  // namespace sct
