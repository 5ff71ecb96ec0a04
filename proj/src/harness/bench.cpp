// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>

#include <json.hpp>

#include "sct/errors.hpp"
#include "sct/harness.hpp"
#include "sct/kernels.hpp"

namespace sct::harness {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Restores the kernel thread count on scope exit.
class ThreadPin {
 public:
  explicit ThreadPin(int n) : previous_(kernels::max_threads()) { kernels::set_threads(n); }
  ~ThreadPin() { kernels::set_threads(previous_); }
  ThreadPin(const ThreadPin&) = delete;
  ThreadPin& operator=(const ThreadPin&) = delete;

 private:
  int previous_;
};

}  // namespace

double median_forward_ms(const model::ModelConfig& cfg, std::size_t repeats, std::size_t warmup) {
  if (repeats < 3) throw ContractError("bench: repeats must be at least 3");
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  const auto params = model::init_params<float>(cfg, rng);
  const auto input =
      Tensor<float>::normal({1, cfg.frames, cfg.joints, cfg.input_channels()}, 0.5f, rng);
  NoGradGuard no_grad;
  ThreadPin pin(1);
  for (std::size_t i = 0; i < warmup; ++i) (void)model::forward(input, cfg, params);
  std::vector<double> times;
  for (std::size_t i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto out = model::forward(input, cfg, params);
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return median(times);
}

BenchReport bench_throughput(const model::ModelConfig& cfg, std::size_t repeats, std::size_t warmup) {
  BenchReport r;
  r.repeats = repeats;
  auto sct_cfg = cfg;
  sct_cfg.compress = true;
  auto vanilla_cfg = cfg;
  vanilla_cfg.compress = false;
  r.sct_median_ms = median_forward_ms(sct_cfg, repeats, warmup);
  r.vanilla_median_ms = median_forward_ms(vanilla_cfg, repeats, warmup);
  r.speedup = r.vanilla_median_ms / r.sct_median_ms;
  return r;
}

std::string to_json(const BenchReport& r) {
  nlohmann::json doc;
  doc["repeats"] = r.repeats;
  doc["sct_median_ms"] = r.sct_median_ms;
  doc["vanilla_median_ms"] = r.vanilla_median_ms;
  doc["speedup"] = r.speedup;
  return doc.dump();
}

}  // namespace sct::harness
