// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "sct/errors.hpp"
#include "sct/harness.hpp"

namespace sct::harness {

std::vector<double> default_rest_pose() {
  // x: subject's left is +x; y: up; z: depth. Millimetres.
  return {
      0,    0,    0,  // pelvis
      -130, 0,    0,  // r_hip
      -130, -450, 0,  // r_knee
      -130, -880, 0,  // r_ankle
      130,  0,    0,  // l_hip
      130,  -450, 0,  // l_knee
      130,  -880, 0,  // l_ankle
      0,    230,  0,  // spine
      0,    480,  0,  // thorax
      0,    590,  0,  // neck
      0,    820,  0,  // head
      170,  460,  0,  // l_shoulder
      170,  180,  0,  // l_elbow
      170,  -60,  0,  // l_wrist
      -170, 460,  0,  // r_shoulder
      -170, 180,  0,  // r_elbow
      -170, -60,  0,  // r_wrist
  };
}

SyntheticMotionSpec SyntheticMotionSpec::from_json(const std::string& text) {
  SyntheticMotionSpec s;
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.contains("rest_pose")) s.rest_pose = doc.at("rest_pose").get<std::vector<double>>();
    if (doc.contains("motion")) {
      const auto m = doc.at("motion").get<std::string>();
      if (m == "harmonic") {
        s.motion = MotionKind::harmonic;
      } else if (m == "rigid") {
        s.motion = MotionKind::rigid;
      } else {
        throw ConfigError("synthetic spec: unknown motion '" + m + "'");
      }
    }
    s.harmonics = doc.value("harmonics", s.harmonics);
    s.amplitude_mm = doc.value("amplitude_mm", s.amplitude_mm);
    s.max_frequency = doc.value("max_frequency", s.max_frequency);
    s.frames = doc.value("frames", s.frames);
    s.clips = doc.value("clips", s.clips);
    s.noise_2d = doc.value("noise_2d", s.noise_2d);
    s.seed = doc.value("seed", s.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("synthetic spec: ") + e.what());
  }
  return s;
}

SyntheticMotionSpec SyntheticMotionSpec::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open synthetic spec " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

namespace {

struct Term {
  double amp[3];
  double freq;
  double phase;
};

Term draw_term(const SyntheticMotionSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(-spec.amplitude_mm, spec.amplitude_mm);
  std::uniform_real_distribution<double> freq(0.25, std::max(0.25, spec.max_frequency));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  Term t{};
  for (double& a : t.amp) a = amp(rng);
  t.freq = freq(rng);
  t.phase = phase(rng);
  return t;
}

double wave(const Term& t, double u) { return std::sin(2.0 * std::numbers::pi * t.freq * u + t.phase); }

}  // namespace

std::vector<lpg::PoseClip> generate_synthetic(const SyntheticMotionSpec& spec) {
  if (spec.frames < 2) throw ContractError("generate_synthetic: frames must be at least 2");
  if (spec.clips == 0) throw ContractError("generate_synthetic: clips must be positive");
  if (!(spec.noise_2d >= 0.0) || !(spec.amplitude_mm >= 0.0)) {
    throw ContractError("generate_synthetic: noise and amplitude must be non-negative");
  }
  const auto rest = spec.rest_pose.empty() ? default_rest_pose() : spec.rest_pose;
  if (rest.empty() || rest.size() % 3 != 0) throw ContractError("generate_synthetic: rest pose must be J x 3");
  const std::size_t joints = rest.size() / 3;
  const std::size_t frames = spec.frames;

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<lpg::PoseClip> out;
  for (std::size_t c = 0; c < spec.clips; ++c) {
    lpg::PoseSequence gt(frames, joints, 3);
    if (spec.motion == MotionKind::harmonic) {
      std::vector<Term> terms;
      for (std::size_t i = 0; i < joints * spec.harmonics; ++i) terms.push_back(draw_term(spec, rng));
      for (std::size_t f = 0; f < frames; ++f) {
        const double u = static_cast<double>(f) / static_cast<double>(frames);
        for (std::size_t j = 0; j < joints; ++j) {
          for (std::size_t d = 0; d < 3; ++d) {
            double v = rest[j * 3 + d];
            for (std::size_t h = 0; h < spec.harmonics; ++h) {
              const Term& t = terms[j * spec.harmonics + h];
              v += t.amp[d] * wave(t, u);
            }
            gt.at(f, j, d) = v;
          }
        }
      }
    } else {
      // Rotation about the vertical axis plus a translation, both harmonic.
      const Term yaw = draw_term(spec, rng);
      const Term shift = draw_term(spec, rng);
      const double yaw_amp = std::numbers::pi / 4;
      for (std::size_t f = 0; f < frames; ++f) {
        const double u = static_cast<double>(f) / static_cast<double>(frames);
        const double a = yaw_amp * wave(yaw, u);
        const double ca = std::cos(a), sa = std::sin(a);
        const double w = wave(shift, u);
        for (std::size_t j = 0; j < joints; ++j) {
          const double x = rest[j * 3], y = rest[j * 3 + 1], z = rest[j * 3 + 2];
          gt.at(f, j, 0) = ca * x + sa * z + shift.amp[0] * w;
          gt.at(f, j, 1) = y + shift.amp[1] * w;
          gt.at(f, j, 2) = -sa * x + ca * z + shift.amp[2] * w;
        }
      }
    }
    lpg::PoseSequence in2d(frames, joints, 2);
    in2d.confidence.assign(frames * joints, 1.0);
    for (std::size_t f = 0; f < frames; ++f) {
      for (std::size_t j = 0; j < joints; ++j) {
        double n2 = 0;
        for (std::size_t d = 0; d < 2; ++d) {
          const double e = spec.noise_2d > 0 ? spec.noise_2d * noise(rng) : 0.0;
          in2d.at(f, j, d) = gt.at(f, j, d) + e;
          n2 += e * e;
        }
        if (spec.noise_2d > 0) {
          const double conf = std::exp(-n2 / (2.0 * spec.noise_2d * spec.noise_2d));
          in2d.confidence[f * joints + j] = std::clamp(conf, 0.0, 1.0);
        }
      }
    }
    out.push_back({std::move(gt), std::move(in2d)});
  }
  return out;
}

}  // namespace sct::harness
