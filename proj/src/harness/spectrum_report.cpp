// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sct/errors.hpp"
#include "sct/harness.hpp"
#include "sct/ops.hpp"

namespace sct::harness {

SpectrumResult spectrum_report(const model::ModelConfig& cfg,
                               const model::NetworkParams<float>& params,
                               const std::vector<lpg::PoseClip>& data, std::size_t block_index) {
  if (block_index >= cfg.layers) {
    throw ContractError("spectrum_report: block " + std::to_string(block_index) +
                        " out of range for " + std::to_string(cfg.layers) + " layers");
  }
  if (data.empty()) throw ContractError("spectrum_report: dataset is empty");
  const auto topo = topology_for(cfg);
  NoGradGuard no_grad;
  std::vector<Tensor<float>> clips;
  for (const auto& clip : data) {
    const Sample s = make_sample(clip, cfg, topo);
    const auto out = model::forward(s.input, cfg, params);
    const auto& h = block_index == 0 ? out.activations.embedding : out.activations.hidden[block_index - 1];
    clips.push_back(reshape(h, {h.dim(1), h.dim(2), h.dim(3)}));
  }
  SpectrumResult r;
  r.report = spectral::power_spectrum<float>(clips);
  r.report.block_index = static_cast<int>(block_index);
  const std::size_t len = r.report.power.size();
  r.band_bins = cfg.compress ? spectral::compressed_length(len, cfg.sigma) : len;
  r.band_fraction = r.report.band_fraction(r.band_bins);
  return r;
}

}  // namespace sct::harness
