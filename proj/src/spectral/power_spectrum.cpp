// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>

#include "sct/errors.hpp"
#include "sct/fft.hpp"
#include "sct/spectral.hpp"

namespace sct::spectral {

double SpectrumReport::total() const { return std::accumulate(power.begin(), power.end(), 0.0); }

double SpectrumReport::band_fraction(std::size_t bins) const {
  const double t = total();
  if (t <= 0) throw NumericError("band_fraction: spectrum has no power");
  bins = std::min(bins, power.size());
  return std::accumulate(power.begin(), power.begin() + static_cast<std::ptrdiff_t>(bins), 0.0) / t;
}

template <typename T>
SpectrumReport power_spectrum(std::span<const Tensor<T>> clips) {
  if (clips.empty()) throw ContractError("power_spectrum: no clips");
  SpectrumReport rep;
  const Shape& s0 = clips.front().shape();
  if (s0.size() != 3) throw ShapeError("power_spectrum: clips must be [F, J, C], got " + shape_str(s0));
  const std::size_t frames = s0[0];
  rep.joints = s0[1];
  rep.channels = s0[2];
  rep.clips = clips.size();
  rep.power.assign(frames, 0.0);
  const std::size_t lanes = rep.joints * rep.channels;
  const DctPlan& plan = dct_plan(frames);
  std::vector<double> src(frames), dst(frames);
  for (const auto& clip : clips) {
    if (clip.shape() != s0) throw ShapeError("power_spectrum: clip shapes differ");
    const auto d = clip.data();
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      for (std::size_t t = 0; t < frames; ++t) src[t] = static_cast<double>(d[t * lanes + lane]);
      plan.forward(src.data(), dst.data());
      for (std::size_t k = 0; k < frames; ++k) rep.power[k] += dst[k] * dst[k];
    }
  }
  const double denom = static_cast<double>(lanes * clips.size());
  for (auto& p : rep.power) p /= denom;
  return rep;
}

void write_csv(const SpectrumReport& report, std::ostream& os) {
  os << "freq,power\n";
  for (std::size_t k = 0; k < report.power.size(); ++k) os << k << ',' << report.power[k] << '\n';
}

template SpectrumReport power_spectrum(std::span<const Tensor<float>>);
template SpectrumReport power_spectrum(std::span<const Tensor<double>>);

}  // namespace sct::spectral
