// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>

#include "sct/tensor.hpp"

namespace sct {

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t coordinates = 0;
  std::size_t worst_tensor = 0;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

// Compares reverse-mode gradients of the scalar `loss` against central
// differences for every coordinate of every tensor in `wrt`. Error per
// coordinate is |analytic - numeric| / max(1, |numeric|). Throws
// NumericError if either gradient is NaN. Double precision only.
GradCheckResult grad_check(const std::function<Tensor<double>()>& loss,
                           std::span<Tensor<double>> wrt, double eps = 1e-4);

// Single-input convenience form: f(x) must be scalar.
double grad_check(const std::function<Tensor<double>(const Tensor<double>&)>& f,
                  Tensor<double> x, double eps = 1e-4);

}  // namespace sct
