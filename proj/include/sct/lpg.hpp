// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sct/tensor.hpp"

// Skeleton topology, pose sequences, the line pose graph (bone midpoints plus
// the root joint) and the input augmentation built on it.
namespace sct::lpg {

struct SkeletonTopology {
  std::vector<int> parent;  // parent[0] == -1
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> left_right_pairs;

  std::size_t joint_count() const { return parent.size(); }
  std::size_t bone_count() const { return parent.empty() ? 0 : parent.size() - 1; }

  // Throws ContractError unless the parents form a tree rooted at 0 and every
  // pair names two distinct valid joints.
  void validate() const;

  // 17-joint Human3.6M tree: pelvis 0, right leg 1-3, left leg 4-6, spine 7,
  // thorax 8, neck 9, head 10, left arm 11-13, right arm 14-16.
  static SkeletonTopology h36m();
  // JSON {"parents": [...], "pairs": [[l, r], ...], "names": [...]?}.
  static SkeletonTopology from_json(const std::string& text);
  static SkeletonTopology load(const std::filesystem::path& path);
};

// F x J x D values, row-major; `confidence` is empty or F x J in [0, 1].
struct PoseSequence {
  std::size_t frames = 0;
  std::size_t joints = 0;
  std::size_t dims = 0;
  double fps = 50.0;
  std::vector<double> data;
  std::vector<double> confidence;

  PoseSequence() = default;
  PoseSequence(std::size_t frames, std::size_t joints, std::size_t dims);

  double& at(std::size_t f, std::size_t j, std::size_t d) { return data[(f * joints + j) * dims + d]; }
  double at(std::size_t f, std::size_t j, std::size_t d) const {
    return data[(f * joints + j) * dims + d];
  }
  bool has_confidence() const { return !confidence.empty(); }

  // Throws ContractError on size mismatch, non-finite values or confidence
  // outside [0, 1].
  void validate() const;
};

// Slot 0 holds the root joint, slot i >= 1 the midpoint of joint i and its
// parent. Works for any coordinate dimension; confidence is not carried.
PoseSequence line_pose(const PoseSequence& pose, const SkeletonTopology& topo);

// Channels per joint fed to the embedding: 5 with bone channels, 3 without.
inline std::size_t input_channels(bool use_lpg) { return use_lpg ? 5 : 3; }

// [F, J, 5] = (x, y, confidence, bone_x, bone_y); confidence defaults to 1.
// With use_lpg false the bone channels are omitted ([F, J, 3]).
template <typename T>
Tensor<T> augment_sequence(const PoseSequence& pose2d, const SkeletonTopology& topo,
                           bool use_lpg = true);

// Negates x then swaps every left/right pair (values and confidence).
PoseSequence horizontal_flip(const PoseSequence& pose, const SkeletonTopology& topo);

struct BoneVariance {
  std::vector<double> per_bone;  // bone i-1 ends at child joint i
  double mean = 0.0;
};

// Population variance over frames of each bone length.
BoneVariance bone_length_variance(const PoseSequence& pose, const SkeletonTopology& topo);

// One JSON-lines record. `pose` is the "frames" field; dataset files also
// carry "input2d" (x, y, confidence per joint) next to the 3D ground truth.
struct PoseClip {
  PoseSequence pose;
  std::optional<PoseSequence> input2d;
};

std::vector<PoseClip> read_pose_lines(std::istream& in);
std::vector<PoseClip> read_pose_file(const std::filesystem::path& path);
void write_pose_lines(std::ostream& out, const std::vector<PoseClip>& clips);
void write_pose_file(const std::filesystem::path& path, const std::vector<PoseClip>& clips);

}  // namespace sct::lpg
