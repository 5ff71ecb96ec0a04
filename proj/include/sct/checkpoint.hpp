// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sct/tensor.hpp"

// Flat binary parameter blob:
//   "SCTL" | version u32 | count u64 |
//   count x ( name_len u64 | name bytes | rank u64 | dims u64 x rank | f32 payload )
// All integers and floats little-endian.
namespace sct {

inline constexpr char kCheckpointMagic[4] = {'S', 'C', 'T', 'L'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct CheckpointArray {
  std::string name;
  Shape shape;
  std::vector<float> values;
};

void write_checkpoint(const std::filesystem::path& path, const std::vector<CheckpointArray>& arrays);
std::vector<CheckpointArray> read_checkpoint(const std::filesystem::path& path);

template <typename T>
void save_parameters(const std::filesystem::path& path, const ParameterList<T>& params);

// Copies stored values into `params`. Every parameter must be present with
// an identical shape; otherwise LoadError lists each offending array.
template <typename T>
void load_parameters(const std::filesystem::path& path, ParameterList<T>& params);

}  // namespace sct
