// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sct/errors.hpp"
#include "sct/lpg.hpp"

namespace sct::lpg {

void SkeletonTopology::validate() const {
  const std::size_t j = parent.size();
  if (j == 0) throw ContractError("topology: no joints");
  if (parent[0] != -1) throw ContractError("topology: joint 0 must be the root (parent -1)");
  for (std::size_t i = 1; i < j; ++i) {
    if (parent[i] < 0 || static_cast<std::size_t>(parent[i]) >= j || static_cast<std::size_t>(parent[i]) == i) {
      throw ContractError("topology: joint " + std::to_string(i) + " has invalid parent " +
                          std::to_string(parent[i]));
    }
  }
  // Every chain must reach the root in fewer than J steps.
  for (std::size_t i = 1; i < j; ++i) {
    std::size_t steps = 0;
    int cur = static_cast<int>(i);
    while (cur != 0) {
      cur = parent[static_cast<std::size_t>(cur)];
      if (++steps > j) throw ContractError("topology: cycle through joint " + std::to_string(i));
    }
  }
  if (!names.empty() && names.size() != j) throw ContractError("topology: names/joints count mismatch");
  for (const auto& [l, r] : left_right_pairs) {
    if (l >= j || r >= j || l == r) {
      throw ContractError("topology: invalid left/right pair (" + std::to_string(l) + ", " +
                          std::to_string(r) + ")");
    }
  }
}

SkeletonTopology SkeletonTopology::h36m() {
  SkeletonTopology t;
  t.parent = {-1, 0, 1, 2, 0, 4, 5, 0, 7, 8, 9, 8, 11, 12, 8, 14, 15};
  t.names = {"pelvis",    "r_hip",      "r_knee",  "r_ankle",  "l_hip",   "l_knee",
             "l_ankle",   "spine",      "thorax",  "neck",     "head",    "l_shoulder",
             "l_elbow",   "l_wrist",    "r_shoulder", "r_elbow", "r_wrist"};
  t.left_right_pairs = {{4, 1}, {5, 2}, {6, 3}, {11, 14}, {12, 15}, {13, 16}};
  return t;
}

SkeletonTopology SkeletonTopology::from_json(const std::string& text) {
  SkeletonTopology t;
  try {
    const auto doc = nlohmann::json::parse(text);
    t.parent = doc.at("parents").get<std::vector<int>>();
    if (doc.contains("pairs")) {
      for (const auto& p : doc.at("pairs")) {
        if (!p.is_array() || p.size() != 2) throw ContractError("topology: pairs must be [l, r]");
        t.left_right_pairs.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
      }
    }
    if (doc.contains("names")) t.names = doc.at("names").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("topology: ") + e.what());
  }
  t.validate();
  return t;
}

SkeletonTopology SkeletonTopology::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("topology: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace sct::lpg
