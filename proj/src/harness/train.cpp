// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "sct/checkpoint.hpp"
#include "sct/errors.hpp"
#include "sct/harness.hpp"
#include "sct/ops.hpp"
#include "sct/optim.hpp"

namespace sct::harness {

namespace {

void check_clip(const lpg::PoseClip& clip, const model::ModelConfig& cfg) {
  if (!clip.input2d) throw ContractError("dataset clip has no input2d observations");
  if (clip.pose.dims != 3) throw ContractError("dataset clip ground truth must be 3D");
  if (clip.pose.joints != cfg.joints) throw ContractError("dataset clip joint count does not match config");
  if (clip.pose.frames != cfg.frames) {
    throw ContractError("dataset clip has " + std::to_string(clip.pose.frames) +
                        " frames, config expects " + std::to_string(cfg.frames));
  }
}

// Stacks single-clip tensors [1, ...] along axis 0.
Tensor<float> stack(const std::vector<const Tensor<float>*>& parts) {
  Shape shape = parts.front()->shape();
  shape[0] = parts.size();
  std::vector<float> v;
  v.reserve(shape_numel(shape));
  for (const auto* p : parts) v.insert(v.end(), p->data().begin(), p->data().end());
  return Tensor<float>(std::move(shape), std::move(v));
}

}  // namespace

Sample make_sample(const lpg::PoseClip& clip, const model::ModelConfig& cfg,
                   const lpg::SkeletonTopology& topo) {
  check_clip(clip, cfg);
  const double k = 1.0 / cfg.unit_mm;
  lpg::PoseSequence in = *clip.input2d;
  for (double& v : in.data) v *= k;
  auto x = lpg::augment_sequence<float>(in, topo, cfg.use_lpg);
  std::vector<float> gt(clip.pose.data.size());
  std::transform(clip.pose.data.begin(), clip.pose.data.end(), gt.begin(),
                 [k](double v) { return static_cast<float>(v * k); });
  Sample s;
  s.input = reshape(x, {1, cfg.frames, cfg.joints, cfg.input_channels()});
  s.target = Tensor<float>({1, cfg.frames, cfg.joints, 3}, std::move(gt));
  return s;
}

TrainResult train(const model::ModelConfig& cfg, const std::vector<lpg::PoseClip>& data,
                  const TrainOptions& opts) {
  cfg.validate();
  if (data.empty()) throw ContractError("train: dataset is empty");
  const auto topo = topology_for(cfg);
  if (cfg.flip_augment && topo.left_right_pairs.empty()) {
    throw ConfigError("train: flip_augment needs left/right pairs in the topology");
  }
  std::vector<Sample> plain, flipped;
  for (const auto& clip : data) {
    plain.push_back(make_sample(clip, cfg, topo));
    if (cfg.flip_augment) {
      lpg::PoseClip f{lpg::horizontal_flip(clip.pose, topo), lpg::horizontal_flip(*clip.input2d, topo)};
      flipped.push_back(make_sample(f, cfg, topo));
    }
  }

  std::mt19937_64 rng(cfg.seed);
  TrainResult result;
  result.params = model::init_params<float>(cfg, rng);
  auto tensors = result.params.tensors();
  AdamWState<float> opt;
  opt.lr = cfg.lr;
  opt.weight_decay = cfg.weight_decay;
  const model::RunContext ctx{true, &rng};
  std::bernoulli_distribution coin(0.5);

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  bool done = cfg.max_steps != 0 && result.steps >= cfg.max_steps;
  for (std::size_t epoch = 0; epoch < cfg.epochs && !done; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_sum = 0;
    std::size_t epoch_steps = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      std::vector<const Tensor<float>*> xs, ys;
      for (std::size_t i = start; i < std::min(order.size(), start + cfg.batch_size); ++i) {
        const bool flip = cfg.flip_augment && coin(rng);
        const Sample& s = flip ? flipped[order[i]] : plain[order[i]];
        xs.push_back(&s.input);
        ys.push_back(&s.target);
      }
      double loss_value = 0;
      try {
        const auto out = model::forward(stack(xs), cfg, result.params, ctx);
        const auto loss = model::total_loss(out.pose, stack(ys), cfg.lambda);
        loss_value = static_cast<double>(loss.item());
        backward(loss);
      } catch (const NumericError& e) {
        Tape<float>::current().clear();
        throw TrainingError("training diverged at epoch " + std::to_string(epoch) + ", step " +
                            std::to_string(result.steps) + ": " + e.what());
      }
      adamw_step(std::span<Tensor<float>>(tensors), opt);
      for (auto& t : tensors) t.zero_grad();
      result.step_loss.push_back(loss_value);
      epoch_sum += loss_value;
      ++epoch_steps;
      ++result.steps;
      if (cfg.max_steps != 0 && result.steps >= cfg.max_steps) {
        done = true;
        break;
      }
    }
    result.epoch_loss.push_back(epoch_sum / static_cast<double>(std::max<std::size_t>(1, epoch_steps)));
    if (opts.log) {
      *opts.log << "epoch " << epoch << " steps " << result.steps << " loss " << result.epoch_loss.back()
                << " lr " << opt.lr << '\n';
    }
    opt.lr *= cfg.lr_decay;
  }
  result.final_loss = result.step_loss.empty() ? 0.0 : result.step_loss.back();

  if (!opts.out_dir.empty()) {
    save_model(opts.out_dir, cfg, result.params);
    std::ofstream csv(opts.out_dir / "loss.csv");
    csv << "step,loss\n";
    csv.precision(9);
    for (std::size_t i = 0; i < result.step_loss.size(); ++i) csv << i << ',' << result.step_loss[i] << '\n';
    std::ofstream ecsv(opts.out_dir / "epoch_loss.csv");
    ecsv << "epoch,loss\n";
    ecsv.precision(9);
    for (std::size_t i = 0; i < result.epoch_loss.size(); ++i) ecsv << i << ',' << result.epoch_loss[i] << '\n';
  }
  return result;
}

EvalResult evaluate(const model::ModelConfig& cfg, const model::NetworkParams<float>& params,
                    const std::vector<lpg::PoseClip>& data) {
  if (data.empty()) throw ContractError("evaluate: dataset is empty");
  const auto topo = topology_for(cfg);
  NoGradGuard no_grad;
  EvalResult r;
  std::vector<double> pred, gt;
  for (const auto& clip : data) {
    const Sample s = make_sample(clip, cfg, topo);
    const auto out = model::forward(s.input, cfg, params);
    lpg::PoseClip p;
    p.pose = lpg::PoseSequence(cfg.frames, cfg.joints, 3);
    p.pose.fps = clip.pose.fps;
    const auto values = out.pose.data();
    for (std::size_t i = 0; i < values.size(); ++i) p.pose.data[i] = static_cast<double>(values[i]) * cfg.unit_mm;
    pred.insert(pred.end(), p.pose.data.begin(), p.pose.data.end());
    gt.insert(gt.end(), clip.pose.data.begin(), clip.pose.data.end());
    r.predictions.push_back(std::move(p));
  }
  r.metrics = model::evaluate_metrics(pred, gt, cfg.joints);
  return r;
}

void save_model(const std::filesystem::path& dir, const model::ModelConfig& cfg,
                const model::NetworkParams<float>& params) {
  std::filesystem::create_directories(dir);
  save_parameters(dir / "model.ckpt", params.named());
  std::ofstream out(dir / "config.txt");
  if (!out) throw LoadError("cannot write " + (dir / "config.txt").string());
  write_config(out, cfg);
}

LoadedModel load_model(const std::filesystem::path& ckpt) {
  const auto cfg_path = ckpt.parent_path() / "config.txt";
  std::ifstream in(cfg_path);
  if (!in) throw LoadError("checkpoint " + ckpt.string() + " has no config.txt next to it");
  LoadedModel m;
  m.cfg = parse_config(in, cfg_path.parent_path());
  std::mt19937_64 rng(m.cfg.seed);
  m.params = model::init_params<float>(m.cfg, rng);
  auto named = m.params.named();
  load_parameters(ckpt, named);
  return m;
}

EvalResult run_eval(const std::filesystem::path& ckpt, const std::filesystem::path& data) {
  const auto m = load_model(ckpt);
  return evaluate(m.cfg, m.params, lpg::read_pose_file(data));
}

std::string to_json(const model::Metrics& m) {
  nlohmann::json doc;
  doc["mpjpe"] = m.mpjpe;
  doc["p_mpjpe"] = m.p_mpjpe;
  doc["pck"] = m.pck;
  doc["auc"] = m.auc;
  doc["poses"] = m.poses;
  doc["degenerate_poses"] = m.degenerate_poses;
  return doc.dump();
}

}  // namespace sct::harness
