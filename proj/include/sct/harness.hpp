// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sct/lpg.hpp"
#include "sct/model.hpp"
#include "sct/spectral.hpp"

// Run-level plumbing: configuration files, synthetic data, training,
// evaluation, compute accounting, timing and spectrum reports.
namespace sct::harness {

// ---- configuration ---------------------------------------------------------

// Flat `key = value` lines, `#` comments. Keys are the ModelConfig field
// names. Unknown keys and malformed values throw ConfigError. A relative
// `topology` path is resolved against `base_dir`.
model::ModelConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
// Reads a file, then lets the SCT_SEED environment variable override `seed`.
model::ModelConfig load_config(const std::filesystem::path& path);
void write_config(std::ostream& out, const model::ModelConfig& cfg);

lpg::SkeletonTopology topology_for(const model::ModelConfig& cfg);

// ---- synthetic data --------------------------------------------------------

enum class MotionKind { harmonic, rigid };

struct SyntheticMotionSpec {
  std::vector<double> rest_pose;  // J x 3 mm; empty: built-in 17-joint pose
  MotionKind motion = MotionKind::harmonic;
  std::size_t harmonics = 2;       // sinusoids per joint
  double amplitude_mm = 60.0;      // per-term amplitude bound
  double max_frequency = 2.0;      // cycles per clip
  std::size_t frames = 27;
  std::size_t clips = 4;
  double noise_2d = 0.0;           // mm, Gaussian on each projected coordinate
  std::uint64_t seed = 1;

  // JSON object with the field names above; "motion" is "harmonic" or "rigid".
  static SyntheticMotionSpec from_json(const std::string& text);
  static SyntheticMotionSpec load(const std::filesystem::path& path);
};

// 17-joint standing pose in millimetres, y up, pelvis at the origin, about
// 1700 mm tall and mirror-symmetric about x = 0.
std::vector<double> default_rest_pose();
inline constexpr double kSkeletonScaleMm = 1700.0;

// Each clip: pose = 3D ground truth, input2d = orthographic (x, y) + noise
// with confidence exp(-|noise|^2 / (2 noise_2d^2)).
std::vector<lpg::PoseClip> generate_synthetic(const SyntheticMotionSpec& spec);

// ---- compute accounting ----------------------------------------------------

struct LayerMacs {
  std::uint64_t qkv = 0;
  std::uint64_t scores = 0;
  std::uint64_t values = 0;
  std::uint64_t out_proj = 0;
  std::uint64_t ffn = 0;
  std::uint64_t fusion = 0;
  std::uint64_t total() const { return qkv + scores + values + out_proj + ffn + fusion; }
};

struct MacsBreakdown {
  std::uint64_t embed = 0;
  std::uint64_t head = 0;
  std::vector<LayerMacs> layers;
  std::vector<std::size_t> schedule;
  std::uint64_t total() const;
};

// Multiply-accumulates of one clip's forward pass. Counted: projections,
// score and value contractions, FFN, fusion, embedding, head. Not counted:
// LayerNorm, softmax, DCT, interpolation. `vanilla` disables compression.
MacsBreakdown macs_count(const model::ModelConfig& cfg, bool vanilla = false);
std::string to_json(const MacsBreakdown& m);

// ---- training / evaluation -------------------------------------------------

// Converts a dataset clip into network input [1, F, J, in] and target
// [1, F, J, 3], both in network units.
struct Sample {
  Tensor<float> input;
  Tensor<float> target;
};
Sample make_sample(const lpg::PoseClip& clip, const model::ModelConfig& cfg,
                   const lpg::SkeletonTopology& topo);

struct TrainOptions {
  std::filesystem::path out_dir;  // empty: nothing written
  std::ostream* log = nullptr;    // per-epoch progress lines
};

struct TrainResult {
  model::NetworkParams<float> params;
  std::vector<double> step_loss;
  std::vector<double> epoch_loss;
  std::size_t steps = 0;
  double final_loss = 0.0;
};

// Minibatch AdamW with per-epoch lr decay. Stops after cfg.epochs or
// cfg.max_steps, whichever comes first. Writes model.ckpt, config.txt and
// loss.csv into out_dir. A non-finite loss throws TrainingError.
TrainResult train(const model::ModelConfig& cfg, const std::vector<lpg::PoseClip>& data,
                  const TrainOptions& opts = {});

struct EvalResult {
  model::Metrics metrics;
  std::vector<lpg::PoseClip> predictions;  // 3D, millimetres
};

// Dropout off, no tape.
EvalResult evaluate(const model::ModelConfig& cfg, const model::NetworkParams<float>& params,
                    const std::vector<lpg::PoseClip>& data);

// Loads `ckpt` and the config.txt next to it.
struct LoadedModel {
  model::ModelConfig cfg;
  model::NetworkParams<float> params;
};
LoadedModel load_model(const std::filesystem::path& ckpt);
void save_model(const std::filesystem::path& dir, const model::ModelConfig& cfg,
                const model::NetworkParams<float>& params);

EvalResult run_eval(const std::filesystem::path& ckpt, const std::filesystem::path& data);
std::string to_json(const model::Metrics& m);

// ---- timing ----------------------------------------------------------------

struct BenchReport {
  double sct_median_ms = 0.0;
  double vanilla_median_ms = 0.0;
  double speedup = 0.0;  // vanilla / sct
  std::size_t repeats = 0;
};

// Median wall-clock of single-clip forward passes with compression on and
// off at the same (F, J, C, L), single thread, after `warmup` untimed runs.
BenchReport bench_throughput(const model::ModelConfig& cfg, std::size_t repeats,
                             std::size_t warmup = 1);
// Median forward time of one configuration (as configured).
double median_forward_ms(const model::ModelConfig& cfg, std::size_t repeats, std::size_t warmup = 1);
std::string to_json(const BenchReport& r);

// ---- spectrum --------------------------------------------------------------

struct SpectrumResult {
  spectral::SpectrumReport report;
  std::size_t band_bins = 0;     // ceil(sigma * length)
  double band_fraction = 0.0;    // power share of bins [0, band_bins)
};

// Captures the hidden features entering block `block_index` (the embedding
// output for block 0) on every clip and averages their DCT power.
SpectrumResult spectrum_report(const model::ModelConfig& cfg,
                               const model::NetworkParams<float>& params,
                               const std::vector<lpg::PoseClip>& data, std::size_t block_index);

}  // namespace sct::harness
