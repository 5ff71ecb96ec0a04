// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <initializer_list>
#include <utility>

#include "sct/tensor.hpp"

namespace sct {

// Wraps freshly computed values into a Tensor and, when any input requires
// grad, records `backward` on the current tape. Used by every differentiable
// op, including the ones outside the core engine (spectral, upsampling).
template <typename T>
Tensor<T> record_op(const char* op, Shape shape, std::vector<T> values,
                    std::initializer_list<Tensor<T>> inputs,
                    std::function<void(const TensorNode<T>&)> backward) {
  check_finite<T>(op, values);
  const bool tracked =
      grad_enabled() && std::any_of(inputs.begin(), inputs.end(),
                                    [](const Tensor<T>& t) { return t.requires_grad(); });
  Tensor<T> out(std::move(shape), std::move(values), tracked);
  if (tracked) {
    TapeEntry<T> entry;
    entry.op = op;
    entry.output = out.node();
    for (const auto& t : inputs) entry.inputs.push_back(t.node());
    entry.backward = std::move(backward);
    Tape<T>::current().record(std::move(entry));
  }
  return out;
}

// Gradient buffer of `t` if it participates in differentiation, else null.
template <typename T>
T* grad_sink(const Tensor<T>& t) {
  if (!t.requires_grad()) return nullptr;
  t.node()->ensure_grad();
  return t.node()->grad.data();
}

}  // namespace sct
