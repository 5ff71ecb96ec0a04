// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sct::spectral {

using Complex = std::complex<double>;

// Complex DFT of a fixed length. Powers of two use an iterative radix-2
// transform; every other length goes through Bluestein's chirp-z identity on
// a padded power-of-two transform.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }
  // In place, X_k = sum_n x_n exp(-2 pi i k n / N).
  void forward(std::span<Complex> data) const;
  // In place, includes the 1/N factor.
  void inverse(std::span<Complex> data) const;

 private:
  void radix2(std::span<Complex> data, bool invert) const;
  void bluestein(std::span<Complex> data) const;

  std::size_t n_;
  bool pow2_;
  // radix-2 tables (for n_, or for the padded length under Bluestein)
  std::size_t m_ = 0;
  std::vector<std::size_t> bitrev_;
  std::vector<Complex> twiddle_;
  // Bluestein tables
  std::vector<Complex> chirp_;
  std::vector<Complex> kernel_fft_;
};

// Orthonormal DCT-II of a fixed length via Makhoul's even/odd reordering and
// one complex FFT of the same length.
class DctPlan {
 public:
  explicit DctPlan(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(const double* in, double* out) const;
  void inverse(const double* in, double* out) const;

 private:
  std::size_t n_;
  FftPlan fft_;
  std::vector<Complex> shift_;  // exp(-i pi k / 2N)
  std::vector<double> alpha_;
};

// Per-thread cached plan for length n.
const DctPlan& dct_plan(std::size_t n);

}  // namespace sct::spectral
