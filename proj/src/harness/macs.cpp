// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <json.hpp>

#include "sct/harness.hpp"

namespace sct::harness {

std::uint64_t MacsBreakdown::total() const {
  std::uint64_t t = embed + head;
  for (const auto& l : layers) t += l.total();
  return t;
}

namespace {

// One encoder over `seqs` independent sequences of `len` tokens.
void add_encoder(LayerMacs& m, std::uint64_t seqs, std::uint64_t len, std::uint64_t c,
                 std::uint64_t ratio) {
  const std::uint64_t tokens = seqs * len;
  m.qkv += 3 * tokens * c * c;
  m.scores += seqs * len * len * c;
  m.values += seqs * len * len * c;
  m.out_proj += tokens * c * c;
  m.ffn += 2 * tokens * c * ratio * c;
}

}  // namespace

MacsBreakdown macs_count(const model::ModelConfig& cfg, bool vanilla) {
  auto c2 = cfg;
  if (vanilla) c2.compress = false;
  c2.validate();
  MacsBreakdown out;
  out.schedule = c2.schedule();
  const std::uint64_t F = cfg.frames, J = cfg.joints, C = cfg.channels, r = cfg.mlp_ratio;
  out.embed = F * J * cfg.input_channels() * C;
  out.head = F * J * C * 3;
  for (std::size_t i = 0; i < cfg.layers; ++i) {
    const std::uint64_t fin = out.schedule[i], fout = out.schedule[i + 1];
    LayerMacs m;
    add_encoder(m, fin, J, C, r);   // branch 1 spatial, before compression
    add_encoder(m, J, fout, C, r);  // branch 1 temporal
    add_encoder(m, J, fout, C, r);  // branch 2 temporal
    add_encoder(m, fout, J, C, r);  // branch 2 spatial
    m.fusion = fout * J * 2 * C * 2;
    out.layers.push_back(m);
  }
  return out;
}

std::string to_json(const MacsBreakdown& m) {
  nlohmann::json doc;
  doc["embed"] = m.embed;
  doc["head"] = m.head;
  doc["schedule"] = m.schedule;
  auto layers = nlohmann::json::array();
  for (const auto& l : m.layers) {
    layers.push_back({{"qkv", l.qkv},
                      {"scores", l.scores},
                      {"values", l.values},
                      {"out_proj", l.out_proj},
                      {"ffn", l.ffn},
                      {"fusion", l.fusion},
                      {"total", l.total()}});
  }
  doc["layers"] = layers;
  doc["total"] = m.total();
  return doc.dump(2);
}

}  // namespace sct::harness
