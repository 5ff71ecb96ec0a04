// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sct/fft.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <unordered_map>

#include "sct/errors.hpp"

namespace sct::spectral {

namespace {

bool is_pow2(std::size_t n) { return n && !(n & (n - 1)); }

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// Plain product; operator* goes through the Annex G NaN/inf recovery path.
inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline Complex cmul_conj(Complex a, Complex b) {
  return {a.real() * b.real() + a.imag() * b.imag(), a.imag() * b.real() - a.real() * b.imag()};
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
  if (n == 0) throw ContractError("FFT length must be positive");
  m_ = pow2_ ? n : next_pow2(2 * n - 1);

  bitrev_.resize(m_);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < m_) ++bits;
  for (std::size_t i = 0; i < m_; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
    bitrev_[i] = r;
  }
  twiddle_.resize(m_ / 2 + 1);
  for (std::size_t k = 0; k < twiddle_.size(); ++k) {
    twiddle_[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) /
                                      static_cast<double>(m_));
  }

  if (!pow2_) {
    // chirp_k = exp(-i pi k^2 / n); k^2 reduced mod 2n keeps the angle exact.
    chirp_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t k2 = (k * k) % (2 * n_);
      chirp_[k] = std::polar(1.0, -std::numbers::pi * static_cast<double>(k2) /
                                      static_cast<double>(n_));
    }
    kernel_fft_.assign(m_, Complex{});
    kernel_fft_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n_; ++k) {
      kernel_fft_[k] = std::conj(chirp_[k]);
      kernel_fft_[m_ - k] = std::conj(chirp_[k]);
    }
    radix2(kernel_fft_, false);
  }
}

void FftPlan::radix2(std::span<Complex> a, bool invert) const {
  const std::size_t m = a.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (i < bitrev_[i]) std::swap(a[i], a[bitrev_[i]]);
  }
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = m / len;
    for (std::size_t i = 0; i < m; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const Complex w = twiddle_[j * step];
        const Complex u = a[i + j];
        const Complex v = invert ? cmul_conj(a[i + j + half], w) : cmul(a[i + j + half], w);
        a[i + j] = u + v;
        a[i + j + half] = u - v;
      }
    }
  }
}

void FftPlan::bluestein(std::span<Complex> data) const {
  thread_local std::vector<Complex> work;
  work.assign(m_, Complex{});
  for (std::size_t k = 0; k < n_; ++k) work[k] = cmul(data[k], chirp_[k]);
  radix2(work, false);
  for (std::size_t k = 0; k < m_; ++k) work[k] = cmul(work[k], kernel_fft_[k]);
  radix2(work, true);
  const double inv_m = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < n_; ++k) data[k] = cmul(work[k], chirp_[k]) * inv_m;
}

void FftPlan::forward(std::span<Complex> data) const {
  if (data.size() != n_) throw ShapeError("FFT plan/data length mismatch");
  if (pow2_) {
    radix2(data, false);
  } else {
    bluestein(data);
  }
}

void FftPlan::inverse(std::span<Complex> data) const {
  for (auto& z : data) z = std::conj(z);
  forward(data);
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (auto& z : data) z = std::conj(z) * inv_n;
}

DctPlan::DctPlan(std::size_t n) : n_(n), fft_(n), shift_(n), alpha_(n) {
  for (std::size_t k = 0; k < n; ++k) {
    shift_[k] = std::polar(1.0, -std::numbers::pi * static_cast<double>(k) /
                                    (2.0 * static_cast<double>(n)));
    alpha_[k] = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n));
  }
}

void DctPlan::forward(const double* in, double* out) const {
  const std::size_t n = n_;
  thread_local std::vector<Complex> v;
  v.resize(n);
  // v = (x0, x2, x4, ..., x5, x3, x1)
  for (std::size_t i = 0; 2 * i < n; ++i) v[i] = in[2 * i];
  for (std::size_t i = 0; 2 * i + 1 < n; ++i) v[n - 1 - i] = in[2 * i + 1];
  fft_.forward(v);
  for (std::size_t k = 0; k < n; ++k) out[k] = alpha_[k] * cmul(shift_[k], v[k]).real();
}

void DctPlan::inverse(const double* in, double* out) const {
  const std::size_t n = n_;
  thread_local std::vector<Complex> v;
  v.resize(n);
  // Unnormalised coefficients y_k = X_k / alpha_k, with y_N = 0.
  for (std::size_t k = 0; k < n; ++k) {
    const double yk = in[k] / alpha_[k];
    const double ynk = k == 0 ? 0.0 : in[n - k] / alpha_[n - k];
    v[k] = cmul(std::conj(shift_[k]), Complex(yk, -ynk));
  }
  fft_.inverse(v);
  for (std::size_t i = 0; 2 * i < n; ++i) out[2 * i] = v[i].real();
  for (std::size_t i = 0; 2 * i + 1 < n; ++i) out[2 * i + 1] = v[n - 1 - i].real();
}

const DctPlan& dct_plan(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<DctPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<DctPlan>(n);
  return *slot;
}

}  // namespace sct::spectral
