// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "sct/errors.hpp"
#include "sct/optim.hpp"

namespace sct {

template <typename T>
void adamw_step(std::span<Tensor<T>> params, AdamWState<T>& state) {
  if (state.lr < 0.0) throw ContractError("adamw: learning rate must be non-negative");
  if (state.first_moment.empty()) {
    for (const auto& p : params) {
      state.first_moment.emplace_back(p.numel(), T(0));
      state.second_moment.emplace_back(p.numel(), T(0));
    }
  }
  if (state.first_moment.size() != params.size()) {
    throw ShapeError("adamw: optimizer state tracks " + std::to_string(state.first_moment.size()) +
                     " tensors, got " + std::to_string(params.size()));
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bc1 = 1.0 - std::pow(state.beta1, t);
  const double bc2 = 1.0 - std::pow(state.beta2, t);
  const double decay = state.lr * state.weight_decay;

  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    auto& p = params[pi];
    auto& m = state.first_moment[pi];
    auto& v = state.second_moment[pi];
    if (m.size() != p.numel()) throw ShapeError("adamw: moment/parameter size mismatch");
    auto values = p.mutable_data();
    const auto grad = p.grad();
    const bool has_grad = !grad.empty();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double g = has_grad ? static_cast<double>(grad[i]) : 0.0;
      double w = static_cast<double>(values[i]);
      w -= decay * w;
      const double mi = state.beta1 * m[i] + (1.0 - state.beta1) * g;
      const double vi = state.beta2 * v[i] + (1.0 - state.beta2) * g * g;
      m[i] = static_cast<T>(mi);
      v[i] = static_cast<T>(vi);
      w -= state.lr * (mi / bc1) / (std::sqrt(vi / bc2) + state.eps);
      values[i] = static_cast<T>(w);
    }
  }
}

template void adamw_step<float>(std::span<Tensor<float>>, AdamWState<float>&);
template void adamw_step<double>(std::span<Tensor<double>>, AdamWState<double>&);

}  // namespace sct
