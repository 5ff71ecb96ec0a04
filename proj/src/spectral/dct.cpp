// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "sct/errors.hpp"
#include "sct/fft.hpp"
#include "sct/spectral.hpp"

namespace sct::spectral {

std::size_t compressed_length(std::size_t n, double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw ContractError("compression coefficient sigma must lie in (0, 1), got " +
                        std::to_string(sigma));
  }
  if (n == 0) throw ContractError("cannot compress an empty sequence");
  const double scaled = static_cast<double>(n) * sigma;
  const auto f = static_cast<std::size_t>(std::ceil(scaled - 1e-9 * static_cast<double>(n)));
  return std::max<std::size_t>(1, std::min(f, n));
}

std::vector<std::size_t> compression_schedule(std::size_t frames, double sigma,
                                              std::size_t layers) {
  std::vector<std::size_t> lengths{frames};
  for (std::size_t i = 0; i < layers; ++i) lengths.push_back(compressed_length(lengths.back(), sigma));
  return lengths;
}

namespace {

double basis(std::size_t k, std::size_t n, std::size_t len) {
  return std::cos(std::numbers::pi * static_cast<double>(k) * (2.0 * static_cast<double>(n) + 1.0) /
                  (2.0 * static_cast<double>(len)));
}

double alpha(std::size_t k, std::size_t len) {
  return std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(len));
}

}  // namespace

template <typename T>
Spectrum<T> dct(std::span<const T> x, DctMode mode) {
  const std::size_t n = x.size();
  if (n == 0) throw ContractError("dct of an empty sequence");
  Spectrum<T> s;
  s.source_length = n;
  s.coefficients.resize(n);
  if (mode == DctMode::naive) {
    for (std::size_t k = 0; k < n; ++k) {
      double acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(x[i]) * basis(k, i, n);
      s.coefficients[k] = static_cast<T>(alpha(k, n) * acc);
    }
  } else {
    std::vector<double> in(x.begin(), x.end()), out(n);
    dct_plan(n).forward(in.data(), out.data());
    for (std::size_t k = 0; k < n; ++k) s.coefficients[k] = static_cast<T>(out[k]);
  }
  return s;
}

template <typename T>
std::vector<T> idct(const Spectrum<T>& spectrum, DctMode mode) {
  const std::size_t n = spectrum.coefficients.size();
  if (n == 0 || n != spectrum.source_length) {
    throw ContractError("idct: spectrum holds " + std::to_string(n) +
                        " coefficients for source length " +
                        std::to_string(spectrum.source_length));
  }
  std::vector<T> x(n);
  if (mode == DctMode::naive) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0;
      for (std::size_t k = 0; k < n; ++k)
        acc += alpha(k, n) * static_cast<double>(spectrum.coefficients[k]) * basis(k, i, n);
      x[i] = static_cast<T>(acc);
    }
  } else {
    std::vector<double> in(spectrum.coefficients.begin(), spectrum.coefficients.end()), out(n);
    dct_plan(n).inverse(in.data(), out.data());
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<T>(out[i]);
  }
  return x;
}

template <typename T>
Spectrum<T> low_pass(const Spectrum<T>& spectrum, double sigma) {
  const std::size_t f = compressed_length(spectrum.coefficients.size(), sigma);
  Spectrum<T> out;
  out.coefficients.assign(spectrum.coefficients.begin(), spectrum.coefficients.begin() + f);
  out.source_length = f;
  return out;
}

template <typename T>
std::vector<T> spectral_compress(std::span<const T> x, std::size_t signals, std::size_t frames,
                                 double sigma) {
  if (frames == 0) throw ContractError("spectral_compress: zero frames");
  if (x.size() != signals * frames) throw ShapeError("spectral_compress: data/shape mismatch");
  const std::size_t f = compressed_length(frames, sigma);
  std::vector<T> out(signals * f);
  for (std::size_t s = 0; s < signals; ++s) {
    const auto kept = low_pass(dct(x.subspan(s * frames, frames)), sigma);
    const auto back = idct(kept);
    std::copy(back.begin(), back.end(), out.begin() + static_cast<std::ptrdiff_t>(s * f));
  }
  return out;
}

#define SCT_INSTANTIATE(T)                                                                 \
  template Spectrum<T> dct<T>(std::span<const T>, DctMode);                               \
  template std::vector<T> idct<T>(const Spectrum<T>&, DctMode);                           \
  template Spectrum<T> low_pass<T>(const Spectrum<T>&, double);                           \
  template std::vector<T> spectral_compress<T>(std::span<const T>, std::size_t, std::size_t, \
                                               double);
SCT_INSTANTIATE(float)
SCT_INSTANTIATE(double)
#undef SCT_INSTANTIATE

}  // namespace sct::spectral
