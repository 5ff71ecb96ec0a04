// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sct/errors.hpp"
#include "sct/harness.hpp"
#include "sct/lpg.hpp"
#include "test_util.hpp"

namespace sct::lpg {
namespace {

PoseSequence random_pose(std::size_t frames, std::size_t joints, std::size_t dims, std::mt19937_64& rng,
                         double sd = 300.0) {
  PoseSequence p(frames, joints, dims);
  p.data = sct::testing::random_values(frames * joints * dims, rng, sd);
  return p;
}

TEST(Topology, DefaultSkeletonIsAValidTree) {
  const auto t = SkeletonTopology::h36m();
  EXPECT_NO_THROW(t.validate());
  EXPECT_EQ(t.joint_count(), 17u);
  EXPECT_EQ(t.bone_count(), 16u);
  EXPECT_EQ(t.left_right_pairs.size(), 6u);
}

TEST(Topology, ValidationRejectsBrokenGraphs) {
  SkeletonTopology t;
  t.parent = {-1, 0, 3, 2};  // 2 <-> 3 cycle
  EXPECT_THROW(t.validate(), ContractError);
  t.parent = {-1, -1, 0};  // two roots
  EXPECT_THROW(t.validate(), ContractError);
  t.parent = {0, 0};  // root has a parent
  EXPECT_THROW(t.validate(), ContractError);
  t.parent = {-1, 0, 1};
  t.left_right_pairs = {{1, 1}};
  EXPECT_THROW(t.validate(), ContractError);
  t.left_right_pairs = {{1, 5}};
  EXPECT_THROW(t.validate(), ContractError);
  t.left_right_pairs = {{1, 2}};
  EXPECT_NO_THROW(t.validate());
}

TEST(Topology, JsonLoading) {
  const auto t = SkeletonTopology::from_json(R"({"parents": [-1, 0, 0], "pairs": [[1, 2]]})");
  EXPECT_EQ(t.joint_count(), 3u);
  ASSERT_EQ(t.left_right_pairs.size(), 1u);
  EXPECT_EQ(t.left_right_pairs[0], (std::pair<std::size_t, std::size_t>{1, 2}));
  EXPECT_THROW(SkeletonTopology::from_json(R"({"parents": [-1, 5]})"), ContractError);
  EXPECT_THROW(SkeletonTopology::from_json("not json"), LoadError);
}

TEST(LinePose, MidpointExamples) {
  SkeletonTopology t;
  t.parent = {-1, 0};
  PoseSequence p(1, 2, 2);
  p.data = {0, 0, 2, 4};
  const auto b = line_pose(p, t);
  EXPECT_EQ(b.at(0, 0, 0), 0.0);
  EXPECT_EQ(b.at(0, 1, 0), 1.0);
  EXPECT_EQ(b.at(0, 1, 1), 2.0);

  const auto zero = line_pose(PoseSequence(3, 17, 2), SkeletonTopology::h36m());
  for (double v : zero.data) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(zero.joints, 17u);
}

TEST(LinePose, RootSlotAndMidpointsOnDefaultSkeleton) {
  std::mt19937_64 rng(1);
  const auto t = SkeletonTopology::h36m();
  const auto p = random_pose(4, 17, 2, rng);
  const auto b = line_pose(p, t);
  for (std::size_t f = 0; f < 4; ++f) {
    for (std::size_t d = 0; d < 2; ++d) EXPECT_EQ(b.at(f, 0, d), p.at(f, 0, d));
    for (std::size_t j = 1; j < 17; ++j) {
      const auto par = static_cast<std::size_t>(t.parent[j]);
      for (std::size_t d = 0; d < 2; ++d) EXPECT_EQ(b.at(f, j, d), (p.at(f, par, d) + p.at(f, j, d)) / 2);
    }
  }
}

TEST(LinePose, TranslationEquivariantAndLinear) {
  std::mt19937_64 rng(2);
  const auto t = SkeletonTopology::h36m();
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_pose(3, 17, 2, rng);
    const auto q = random_pose(3, 17, 2, rng);
    const double off[2] = {sct::testing::random_values(1, rng, 100)[0], sct::testing::random_values(1, rng, 100)[0]};
    const double a = 0.7, c = -1.3;
    PoseSequence shifted = p, combo = p;
    for (std::size_t i = 0; i < p.data.size(); ++i) {
      shifted.data[i] += off[i % 2];
      combo.data[i] = a * p.data[i] + c * q.data[i];
    }
    const auto lp = line_pose(p, t), lq = line_pose(q, t);
    const auto ls = line_pose(shifted, t), lc = line_pose(combo, t);
    for (std::size_t i = 0; i < lp.data.size(); ++i) {
      EXPECT_NEAR(ls.data[i], lp.data[i] + off[i % 2], 1e-9);
      EXPECT_NEAR(lc.data[i], a * lp.data[i] + c * lq.data[i], 1e-9);
    }
  }
}

TEST(LinePose, JointCountMismatchIsContractError) {
  EXPECT_THROW(line_pose(PoseSequence(2, 5, 2), SkeletonTopology::h36m()), ContractError);
}

TEST(Augment, ChannelLayoutAndDefaults) {
  std::mt19937_64 rng(3);
  const auto t = SkeletonTopology::h36m();
  const auto p = random_pose(5, 17, 2, rng);
  const auto x = augment_sequence<double>(p, t);
  ASSERT_EQ(x.shape(), (Shape{5, 17, 5}));
  const auto b = line_pose(p, t);
  for (std::size_t f = 0; f < 5; ++f) {
    for (std::size_t j = 0; j < 17; ++j) {
      EXPECT_EQ(x.at({f, j, 0}), p.at(f, j, 0));
      EXPECT_EQ(x.at({f, j, 1}), p.at(f, j, 1));
      EXPECT_EQ(x.at({f, j, 2}), 1.0);
      EXPECT_EQ(x.at({f, j, 3}), b.at(f, j, 0));
      EXPECT_EQ(x.at({f, j, 4}), b.at(f, j, 1));
    }
  }
  auto withc = p;
  withc.confidence.assign(5 * 17, 0.25);
  EXPECT_EQ(augment_sequence<double>(withc, t).at({2, 3, 2}), 0.25);
  EXPECT_EQ(augment_sequence<double>(p, t, false).shape(), (Shape{5, 17, 3}));
}

TEST(Augment, RestPoseBoneChannelsCrossCheck) {
  const auto t = SkeletonTopology::h36m();
  const auto rest3 = harness::default_rest_pose();
  PoseSequence p(1, 17, 2);
  for (std::size_t j = 0; j < 17; ++j) {
    p.at(0, j, 0) = rest3[j * 3];
    p.at(0, j, 1) = rest3[j * 3 + 1];
  }
  const auto x = augment_sequence<double>(p, t);
  // right knee (2) hangs from right hip (1): midpoint (-130, -225)
  EXPECT_EQ(x.at({0, 2, 3}), -130.0);
  EXPECT_EQ(x.at({0, 2, 4}), -225.0);
  const auto b = line_pose(p, t);
  for (std::size_t j = 0; j < 17; ++j) EXPECT_EQ(x.at({0, j, 4}), b.at(0, j, 1));
}

TEST(Flip, InvolutionAndPairIndexCheck) {
  std::mt19937_64 rng(4);
  const auto t = SkeletonTopology::h36m();
  for (int trial = 0; trial < 10; ++trial) {
    auto p = random_pose(3, 17, 3, rng);
    p.confidence = std::vector<double>(3 * 17);
    std::uniform_real_distribution<double> u(0, 1);
    for (auto& c : p.confidence) c = u(rng);
    const auto f = horizontal_flip(p, t);
    EXPECT_EQ(horizontal_flip(f, t).data, p.data);
    EXPECT_EQ(horizontal_flip(f, t).confidence, p.confidence);
    for (const auto& [l, r] : t.left_right_pairs) {
      EXPECT_EQ(f.at(1, l, 0), -p.at(1, r, 0));
      EXPECT_EQ(f.at(1, r, 0), -p.at(1, l, 0));
      EXPECT_EQ(f.at(1, l, 1), p.at(1, r, 1));
      EXPECT_EQ(f.at(1, l, 2), p.at(1, r, 2));
      EXPECT_EQ(f.confidence[17 + l], p.confidence[17 + r]);
    }
    EXPECT_EQ(f.at(2, 0, 0), -p.at(2, 0, 0));  // unpaired joint: x negated in place
    // bone lengths preserved up to the left/right relabelling
    auto v1 = bone_length_variance(p, t).per_bone, v2 = bone_length_variance(f, t).per_bone;
    std::sort(v1.begin(), v1.end());
    std::sort(v2.begin(), v2.end());
    for (std::size_t i = 0; i < v1.size(); ++i) EXPECT_NEAR(v1[i], v2[i], 1e-6 * (1.0 + v1[i]));
  }
}

TEST(Flip, SymmetricRestPoseIsFixedPoint) {
  const auto t = SkeletonTopology::h36m();
  const auto rest = harness::default_rest_pose();
  PoseSequence p(1, 17, 3);
  p.data = rest;
  EXPECT_EQ(horizontal_flip(p, t).data, p.data);
}

TEST(Flip, MissingPairsIsContractError) {
  auto t = SkeletonTopology::h36m();
  t.left_right_pairs.clear();
  EXPECT_THROW(horizontal_flip(PoseSequence(1, 17, 2), t), ContractError);
}

TEST(BoneVariance, Examples) {
  SkeletonTopology t;
  t.parent = {-1, 0};
  PoseSequence p(2, 2, 3);
  p.data = {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 3, 0};  // lengths 1 and 3
  const auto v = bone_length_variance(p, t);
  ASSERT_EQ(v.per_bone.size(), 1u);
  EXPECT_DOUBLE_EQ(v.per_bone[0], 1.0);
  EXPECT_DOUBLE_EQ(v.mean, 1.0);
  EXPECT_THROW(bone_length_variance(PoseSequence(1, 2, 3), t), ContractError);
}

TEST(BoneVariance, RepeatedFrameIsZeroToRounding) {
  std::mt19937_64 rng(5);
  const auto t = SkeletonTopology::h36m();
  const auto one = random_pose(1, 17, 3, rng);
  PoseSequence p(6, 17, 3);
  for (std::size_t f = 0; f < 6; ++f) std::copy(one.data.begin(), one.data.end(), p.data.begin() + f * 51);
  EXPECT_LT(bone_length_variance(p, t).mean, 1e-18);
}

TEST(BoneVariance, RigidMotionIsNearZero) {
  const auto t = SkeletonTopology::h36m();
  const auto rest = harness::default_rest_pose();
  PoseSequence p(30, 17, 3);
  for (std::size_t f = 0; f < 30; ++f) {
    const double a = 0.2 * f, b = 0.05 * f;
    for (std::size_t j = 0; j < 17; ++j) {
      const double x = rest[j * 3], y = rest[j * 3 + 1], z = rest[j * 3 + 2];
      // yaw then pitch, then a translation
      const double x1 = std::cos(a) * x + std::sin(a) * z, z1 = -std::sin(a) * x + std::cos(a) * z;
      p.at(f, j, 0) = x1 + 10.0 * f;
      p.at(f, j, 1) = std::cos(b) * y - std::sin(b) * z1 - 3.0 * f;
      p.at(f, j, 2) = std::sin(b) * y + std::cos(b) * z1 + 500.0;
    }
  }
  EXPECT_LT(bone_length_variance(p, t).mean, 1e-10);
}

TEST(PoseIo, RoundTripWithInputChannel) {
  std::mt19937_64 rng(6);
  PoseClip c;
  c.pose = random_pose(4, 17, 3, rng);
  c.pose.fps = 25;
  c.input2d = random_pose(4, 17, 2, rng);
  c.input2d->confidence.assign(4 * 17, 0.5);
  std::stringstream ss;
  write_pose_lines(ss, {c, c});
  const auto back = read_pose_lines(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].pose.dims, 3u);
  EXPECT_EQ(back[1].pose.fps, 25.0);
  EXPECT_EQ(back[1].pose.data, c.pose.data);
  ASSERT_TRUE(back[1].input2d.has_value());
  EXPECT_EQ(back[1].input2d->data, c.input2d->data);
  EXPECT_EQ(back[1].input2d->confidence, c.input2d->confidence);
}

TEST(PoseIo, AcceptsMinimalRecordsAndRejectsMalformedOnes) {
  std::stringstream ok(R"({"fps": 50, "joints": 2, "frames": [[[0, 1], [2, 3]]]})" "\n");
  const auto clips = read_pose_lines(ok);
  ASSERT_EQ(clips.size(), 1u);
  EXPECT_EQ(clips[0].pose.dims, 2u);

  std::stringstream conf(R"({"joints": 1, "dims": 2, "frames": [[[0, 1, 0.5]]]})" "\n");
  EXPECT_EQ(read_pose_lines(conf)[0].pose.confidence, std::vector<double>{0.5});

  std::stringstream wrong_joints(R"({"joints": 3, "frames": [[[0, 1], [2, 3]]]})" "\n");
  EXPECT_THROW(read_pose_lines(wrong_joints), LoadError);
  std::stringstream garbage("{not json}\n");
  EXPECT_THROW(read_pose_lines(garbage), LoadError);
  std::stringstream bad_conf(R"({"joints": 1, "dims": 2, "frames": [[[0, 1, 1.5]]]})" "\n");
  EXPECT_THROW(read_pose_lines(bad_conf), LoadError);
}

}  // namespace
}  // namespace sct::lpg
