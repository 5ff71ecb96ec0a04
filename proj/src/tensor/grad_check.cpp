// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sct/grad_check.hpp"

#include <cmath>
#include <vector>

#include "sct/errors.hpp"

namespace sct {

GradCheckResult grad_check(const std::function<Tensor<double>()>& loss,
                           std::span<Tensor<double>> wrt, double eps) {
  for (auto& t : wrt) {
    t.set_requires_grad(true);
    t.zero_grad();
  }
  Tape<double>::current().clear();
  backward(loss());

  std::vector<std::vector<double>> analytic;
  for (auto& t : wrt) {
    if (t.has_grad()) {
      analytic.emplace_back(t.grad().begin(), t.grad().end());
    } else {
      analytic.emplace_back(t.numel(), 0.0);  // loss does not depend on t
    }
    t.zero_grad();
  }

  GradCheckResult result;
  NoGradGuard no_grad;
  for (std::size_t ti = 0; ti < wrt.size(); ++ti) {
    auto values = wrt[ti].mutable_data();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + eps;
      const double up = loss().item();
      values[i] = saved - eps;
      const double down = loss().item();
      values[i] = saved;
      const double numeric = (up - down) / (2.0 * eps);
      const double a = analytic[ti][i];
      if (std::isnan(numeric) || std::isnan(a)) {
        throw NumericError("grad_check: NaN gradient at tensor " + std::to_string(ti) +
                           " index " + std::to_string(i));
      }
      const double err = std::abs(a - numeric) / std::max(1.0, std::abs(numeric));
      ++result.coordinates;
      if (err > result.max_rel_error || result.coordinates == 1) {
        result.max_rel_error = err;
        result.worst_tensor = ti;
        result.worst_index = i;
        result.worst_analytic = a;
        result.worst_numeric = numeric;
      }
    }
  }
  return result;
}

double grad_check(const std::function<Tensor<double>(const Tensor<double>&)>& f,
                  Tensor<double> x, double eps) {
  Tensor<double> wrt[] = {x};
  return grad_check([&] { return f(wrt[0]); }, wrt, eps).max_rel_error;
}

}  // namespace sct
