// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace sct {

using Shape = std::vector<std::size_t>;

std::size_t shape_numel(const Shape& shape);
std::string shape_str(const Shape& shape);

// Storage behind a Tensor handle. Values are written once by the producing
// operation; afterwards only `grad` is mutated (by backward) and, for
// parameters, `data` by the optimizer.
template <typename T>
struct TensorNode {
  Shape shape;
  std::vector<T> data;
  std::vector<T> grad;  // empty until something flows into it
  bool requires_grad = false;

  void ensure_grad() {
    if (grad.empty()) grad.assign(data.size(), T(0));
  }
};

// Dense row-major n-d array with shared ownership. Copying a Tensor copies the
// handle, not the values; use clone() for a deep copy.
template <typename T>
class Tensor {
 public:
  using value_type = T;

  Tensor() = default;
  Tensor(Shape shape, std::vector<T> values, bool requires_grad = false);
  // Keeps `Tensor({1}, {2.0})` from binding the braced value to requires_grad.
  Tensor(Shape shape, std::initializer_list<T> values, bool requires_grad = false)
      : Tensor(std::move(shape), std::vector<T>(values), requires_grad) {}
  explicit Tensor(Shape shape, bool requires_grad = false);

  static Tensor scalar(T value, bool requires_grad = false);
  static Tensor full(Shape shape, T value, bool requires_grad = false);
  static Tensor normal(Shape shape, T stddev, std::mt19937_64& rng, bool requires_grad = false);
  static Tensor uniform(Shape shape, T lo, T hi, std::mt19937_64& rng, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const { return node_->shape; }
  std::size_t rank() const { return node_->shape.size(); }
  std::size_t numel() const { return node_->data.size(); }
  // Negative axes count from the end.
  std::size_t dim(int axis) const;

  std::span<const T> data() const { return node_->data; }
  // Direct write access; meant for initialisation, optimisers and
  // finite-difference probes, never for values already on a tape.
  std::span<T> mutable_data() { return node_->data; }
  T item() const;
  T at(std::initializer_list<std::size_t> index) const;

  bool requires_grad() const { return node_->requires_grad; }
  void set_requires_grad(bool on) { node_->requires_grad = on; }
  bool has_grad() const { return !node_->grad.empty(); }
  std::span<const T> grad() const { return node_->grad; }
  std::span<T> mutable_grad() {
    node_->ensure_grad();
    return node_->grad;
  }
  void zero_grad() { node_->grad.clear(); }

  Tensor clone() const;
  // Same values, detached from any tape, requires_grad off.
  Tensor detach() const;

  const std::shared_ptr<TensorNode<T>>& node() const { return node_; }

 private:
  std::shared_ptr<TensorNode<T>> node_;
};

template <typename T>
struct NamedTensor {
  std::string name;
  Tensor<T> tensor;
};

template <typename T>
using ParameterList = std::vector<NamedTensor<T>>;

// Thread-local switch: while a guard is alive operations are not recorded.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

bool grad_enabled();

template <typename T>
struct TapeEntry {
  std::string op;
  std::shared_ptr<TensorNode<T>> output;
  std::vector<std::shared_ptr<TensorNode<T>>> inputs;
  // Reads output.grad (and output.data if needed) and adds into inputs.
  std::function<void(const TensorNode<T>& output)> backward;
};

// Per-thread record of differentiable operations in execution order.
template <typename T>
class Tape {
 public:
  static Tape& current();

  void record(TapeEntry<T> entry);
  std::size_t size() const { return entries_.size(); }
  const std::vector<TapeEntry<T>>& entries() const { return entries_; }
  void clear() { entries_.clear(); }

  // Runs every recorded rule once, newest first, then clears the tape.
  void backward(const Tensor<T>& loss);

 private:
  std::vector<TapeEntry<T>> entries_;
};

// Seeds d(loss)/d(loss) = 1 and propagates into every requires_grad tensor
// on the current thread's tape. Gradients accumulate; callers zero them.
template <typename T>
void backward(const Tensor<T>& loss) {
  Tape<T>::current().backward(loss);
}

// Throws NumericError naming `op` if any value is NaN or Inf.
template <typename T>
void check_finite(const char* op, std::span<const T> values);

extern template class Tensor<float>;
extern template class Tensor<double>;
extern template class Tape<float>;
extern template class Tape<double>;

}  // namespace sct
