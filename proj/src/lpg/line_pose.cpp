// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <utility>

#include "sct/errors.hpp"
#include "sct/lpg.hpp"

namespace sct::lpg {

PoseSequence::PoseSequence(std::size_t f, std::size_t j, std::size_t d)
    : frames(f), joints(j), dims(d), data(f * j * d, 0.0) {}

void PoseSequence::validate() const {
  if (frames == 0 || joints == 0 || dims == 0) throw ContractError("pose: empty sequence");
  if (data.size() != frames * joints * dims) throw ContractError("pose: data size mismatch");
  for (double v : data) {
    if (!std::isfinite(v)) throw ContractError("pose: non-finite coordinate");
  }
  if (!confidence.empty()) {
    if (confidence.size() != frames * joints) throw ContractError("pose: confidence size mismatch");
    for (double c : confidence) {
      if (!(c >= 0.0 && c <= 1.0)) throw ContractError("pose: confidence outside [0, 1]");
    }
  }
}

namespace {

void check_joints(const PoseSequence& pose, const SkeletonTopology& topo, const char* op) {
  topo.validate();
  if (pose.joints != topo.joint_count()) {
    throw ContractError(std::string(op) + ": pose has " + std::to_string(pose.joints) +
                        " joints, topology has " + std::to_string(topo.joint_count()));
  }
  pose.validate();
}

}  // namespace

PoseSequence line_pose(const PoseSequence& pose, const SkeletonTopology& topo) {
  check_joints(pose, topo, "line_pose");
  PoseSequence out(pose.frames, pose.joints, pose.dims);
  out.fps = pose.fps;
  for (std::size_t f = 0; f < pose.frames; ++f) {
    for (std::size_t d = 0; d < pose.dims; ++d) out.at(f, 0, d) = pose.at(f, 0, d);
    for (std::size_t j = 1; j < pose.joints; ++j) {
      const auto p = static_cast<std::size_t>(topo.parent[j]);
      for (std::size_t d = 0; d < pose.dims; ++d) {
        out.at(f, j, d) = 0.5 * (pose.at(f, p, d) + pose.at(f, j, d));
      }
    }
  }
  return out;
}

template <typename T>
Tensor<T> augment_sequence(const PoseSequence& pose2d, const SkeletonTopology& topo, bool use_lpg) {
  check_joints(pose2d, topo, "augment_sequence");
  if (pose2d.dims != 2) throw ContractError("augment_sequence: expects 2D poses");
  const std::size_t ch = input_channels(use_lpg);
  const PoseSequence bones = use_lpg ? line_pose(pose2d, topo) : PoseSequence{};
  std::vector<T> v(pose2d.frames * pose2d.joints * ch);
  for (std::size_t f = 0; f < pose2d.frames; ++f) {
    for (std::size_t j = 0; j < pose2d.joints; ++j) {
      T* row = v.data() + (f * pose2d.joints + j) * ch;
      row[0] = static_cast<T>(pose2d.at(f, j, 0));
      row[1] = static_cast<T>(pose2d.at(f, j, 1));
      row[2] = pose2d.has_confidence() ? static_cast<T>(pose2d.confidence[f * pose2d.joints + j]) : T(1);
      if (use_lpg) {
        row[3] = static_cast<T>(bones.at(f, j, 0));
        row[4] = static_cast<T>(bones.at(f, j, 1));
      }
    }
  }
  return Tensor<T>({pose2d.frames, pose2d.joints, ch}, std::move(v));
}

PoseSequence horizontal_flip(const PoseSequence& pose, const SkeletonTopology& topo) {
  check_joints(pose, topo, "horizontal_flip");
  if (topo.left_right_pairs.empty()) throw ContractError("horizontal_flip: topology has no left/right pairs");
  PoseSequence out = pose;
  for (std::size_t f = 0; f < pose.frames; ++f) {
    for (std::size_t j = 0; j < pose.joints; ++j) out.at(f, j, 0) = -out.at(f, j, 0);
    for (const auto& [l, r] : topo.left_right_pairs) {
      for (std::size_t d = 0; d < pose.dims; ++d) std::swap(out.at(f, l, d), out.at(f, r, d));
      if (out.has_confidence()) {
        std::swap(out.confidence[f * pose.joints + l], out.confidence[f * pose.joints + r]);
      }
    }
  }
  return out;
}

BoneVariance bone_length_variance(const PoseSequence& pose, const SkeletonTopology& topo) {
  check_joints(pose, topo, "bone_length_variance");
  if (pose.frames < 2) throw ContractError("bone_length_variance: needs at least 2 frames");
  BoneVariance out;
  const auto n = static_cast<double>(pose.frames);
  std::vector<double> len(pose.frames);
  for (std::size_t j = 1; j < pose.joints; ++j) {
    const auto p = static_cast<std::size_t>(topo.parent[j]);
    double m = 0;
    for (std::size_t f = 0; f < pose.frames; ++f) {
      double s = 0;
      for (std::size_t d = 0; d < pose.dims; ++d) {
        const double diff = pose.at(f, j, d) - pose.at(f, p, d);
        s += diff * diff;
      }
      len[f] = std::sqrt(s);
      m += len[f];
    }
    m /= n;
    double var = 0;
    for (double l : len) var += (l - m) * (l - m);
    out.per_bone.push_back(var / n);
  }
  for (double v : out.per_bone) out.mean += v;
  if (!out.per_bone.empty()) out.mean /= static_cast<double>(out.per_bone.size());
  return out;
}

template Tensor<float> augment_sequence(const PoseSequence&, const SkeletonTopology&, bool);
template Tensor<double> augment_sequence(const PoseSequence&, const SkeletonTopology&, bool);

}  // namespace sct::lpg
