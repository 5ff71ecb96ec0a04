// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "sct/tensor.hpp"

// Orthonormal DCT-II / inverse, low-pass truncation and the temporal
// compression operator built from them, plus power-spectrum analysis of
// hidden feature signals.
//
//   X_k = a_k sum_n x_n cos(pi k (2n + 1) / 2N),  a_0 = sqrt(1/N), a_k = sqrt(2/N)
//   x_n = sum_k a_k X_k cos(pi k (2n + 1) / 2N)
namespace sct::spectral {

enum class DctMode { naive, fast };

template <typename T>
struct Spectrum {
  std::vector<T> coefficients;
  std::size_t source_length = 0;
};

// ceil(n * sigma), robust to representation error in sigma (10 * 0.3 -> 3).
std::size_t compressed_length(std::size_t n, double sigma);

// f_0 = frames, f_{i+1} = compressed_length(f_i, sigma); layers + 1 entries.
std::vector<std::size_t> compression_schedule(std::size_t frames, double sigma,
                                              std::size_t layers);

template <typename T>
Spectrum<T> dct(std::span<const T> x, DctMode mode = DctMode::fast);

template <typename T>
std::vector<T> idct(const Spectrum<T>& spectrum, DctMode mode = DctMode::fast);

// Keeps coefficients 0..f-1 with f = compressed_length(N, sigma).
template <typename T>
Spectrum<T> low_pass(const Spectrum<T>& spectrum, double sigma);

// x is [signals, frames] (e.g. joints * channels signals, temporal axis
// last); returns [signals, f]. Each signal becomes
// idct_f(low_pass(dct_F(signal))), so a constant c maps to c * sqrt(F / f).
template <typename T>
std::vector<T> spectral_compress(std::span<const T> x, std::size_t signals, std::size_t frames,
                                 double sigma);

// Differentiable DCT along `axis` (orthonormal; backward is the inverse DCT).
template <typename T>
Tensor<T> dct_axis(const Tensor<T>& x, int axis);

// Differentiable temporal compression along `axis`: length F -> f. Linear;
// backward applies the adjoint idct_F(zero_pad(dct_f(grad))).
template <typename T>
Tensor<T> spectral_compress(const Tensor<T>& x, int axis, double sigma);

struct SpectrumReport {
  std::vector<double> power;  // mean power per frequency bin
  std::size_t joints = 0;
  std::size_t channels = 0;
  std::size_t clips = 0;
  int block_index = -1;  // -1 when not taken from a network block

  double total() const;
  // Fraction of total power in bins [0, bins).
  double band_fraction(std::size_t bins) const;
};

// clips: each [F, J, C]. Per (joint, channel) temporal signal: dct, square,
// then average over joints, channels and clips.
template <typename T>
SpectrumReport power_spectrum(std::span<const Tensor<T>> clips);

// Header `freq,power`, one row per bin.
void write_csv(const SpectrumReport& report, std::ostream& os);

}  // namespace sct::spectral
