// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <exception>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sct/errors.hpp"
#include "sct/harness.hpp"

namespace h = sct::harness;

int main(int argc, char** argv) {
  CLI::App app{"sct: spectral compression transformer for 2D-to-3D pose lifting"};
  app.require_subcommand(1);

  std::string spec_path, out_path, config_path, data_path, ckpt_path, pred_path;
  std::size_t repeats = 5, block = 0;
  bool vanilla = false, quiet = false;

  auto* gen = app.add_subcommand("generate", "Write a synthetic dataset (JSON lines)");
  gen->add_option("--spec", spec_path, "Synthetic motion spec (JSON)")->required();
  gen->add_option("--out", out_path, "Output dataset file")->required();

  auto* train = app.add_subcommand("train", "Train a model; writes model.ckpt, config.txt, loss.csv");
  train->add_option("--config", config_path, "Config file (key = value)")->required();
  train->add_option("--data", data_path, "Dataset file")->required();
  train->add_option("--out", out_path, "Output directory")->required();
  train->add_flag("--quiet", quiet, "No per-epoch progress");

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint; prints metrics JSON");
  eval->add_option("--ckpt", ckpt_path, "Checkpoint (config.txt must sit next to it)")->required();
  eval->add_option("--data", data_path, "Dataset file")->required();
  eval->add_option("--pred", pred_path, "Also write predictions (JSON lines)");

  auto* macs = app.add_subcommand("macs", "Analytic multiply-accumulate count; prints JSON");
  macs->add_option("--config", config_path, "Config file")->required();
  macs->add_flag("--vanilla", vanilla, "Count the uncompressed network");

  auto* bench = app.add_subcommand("bench", "Median forward time, compressed vs vanilla; prints JSON");
  bench->add_option("--config", config_path, "Config file")->required();
  bench->add_option("--repeats", repeats, "Timed repetitions (>= 3)")->check(CLI::Range(3, 100000));

  auto* spec = app.add_subcommand("spectrum", "Power spectrum of the features entering a block");
  spec->add_option("--ckpt", ckpt_path, "Checkpoint")->required();
  spec->add_option("--data", data_path, "Dataset file")->required();
  spec->add_option("--block", block, "Block index (0-based)")->required();
  spec->add_option("--out", out_path, "CSV output")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto clips = h::generate_synthetic(h::SyntheticMotionSpec::load(spec_path));
      sct::lpg::write_pose_file(out_path, clips);
      std::cout << "wrote " << clips.size() << " clips to " << out_path << '\n';
    } else if (*train) {
      const auto cfg = h::load_config(config_path);
      h::TrainOptions opts;
      opts.out_dir = out_path;
      opts.log = quiet ? nullptr : &std::cerr;
      const auto r = h::train(cfg, sct::lpg::read_pose_file(data_path), opts);
      std::cout << nlohmann::json{{"steps", r.steps}, {"final_loss", r.final_loss},
                                  {"checkpoint", (std::filesystem::path(out_path) / "model.ckpt").string()}}
                       .dump()
                << '\n';
    } else if (*eval) {
      const auto r = h::run_eval(ckpt_path, data_path);
      if (!pred_path.empty()) sct::lpg::write_pose_file(pred_path, r.predictions);
      std::cout << h::to_json(r.metrics) << '\n';
    } else if (*macs) {
      std::cout << h::to_json(h::macs_count(h::load_config(config_path), vanilla)) << '\n';
    } else if (*bench) {
      std::cout << h::to_json(h::bench_throughput(h::load_config(config_path), repeats)) << '\n';
    } else if (*spec) {
      const auto m = h::load_model(ckpt_path);
      const auto r = h::spectrum_report(m.cfg, m.params, sct::lpg::read_pose_file(data_path), block);
      std::ofstream csv(out_path);
      if (!csv) throw sct::LoadError("cannot write " + out_path);
      sct::spectral::write_csv(r.report, csv);
      std::cout << nlohmann::json{{"block", block},
                                  {"bins", r.report.power.size()},
                                  {"band_bins", r.band_bins},
                                  {"band_fraction", r.band_fraction}}
                       .dump()
                << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
