// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include "sct/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "sct/errors.hpp"

namespace sct {

namespace {

template <typename U>
U to_little(U v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char bytes[sizeof(U)];
    std::memcpy(bytes, &v, sizeof(U));
    for (std::size_t i = 0; i < sizeof(U) / 2; ++i) std::swap(bytes[i], bytes[sizeof(U) - 1 - i]);
    std::memcpy(&v, bytes, sizeof(U));
  }
  return v;
}

template <typename U>
void put(std::ostream& os, U v) {
  v = to_little(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(U));
}

template <typename U>
U get(std::istream& is, const std::filesystem::path& path) {
  U v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(U))) {
    throw LoadError("truncated checkpoint " + path.string());
  }
  return to_little(v);
}

// Guard against absurd sizes from corrupt files before allocating.
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 34;

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const std::vector<CheckpointArray>& arrays) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw LoadError("cannot open " + path.string() + " for writing");
  os.write(kCheckpointMagic, 4);
  put<std::uint32_t>(os, kCheckpointVersion);
  put<std::uint64_t>(os, arrays.size());
  for (const auto& a : arrays) {
    if (shape_numel(a.shape) != a.values.size()) {
      throw ShapeError("checkpoint array '" + a.name + "' has inconsistent shape");
    }
    put<std::uint64_t>(os, a.name.size());
    os.write(a.name.data(), static_cast<std::streamsize>(a.name.size()));
    put<std::uint64_t>(os, a.shape.size());
    for (std::size_t d : a.shape) put<std::uint64_t>(os, d);
    for (float v : a.values) {
      std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
      put<std::uint32_t>(os, bits);
    }
  }
  if (!os) throw LoadError("write failed for " + path.string());
}

std::vector<CheckpointArray> read_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw LoadError("cannot open checkpoint " + path.string());
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kCheckpointMagic, 4) != 0) {
    throw LoadError(path.string() + " is not an SCTL checkpoint");
  }
  const auto version = get<std::uint32_t>(is, path);
  if (version != kCheckpointVersion) {
    throw LoadError("unsupported checkpoint version " + std::to_string(version));
  }
  const auto count = get<std::uint64_t>(is, path);
  std::vector<CheckpointArray> arrays;
  for (std::uint64_t i = 0; i < count; ++i) {
    CheckpointArray a;
    const auto name_len = get<std::uint64_t>(is, path);
    if (name_len > 4096) throw LoadError("corrupt checkpoint: name length " + std::to_string(name_len));
    a.name.resize(name_len);
    if (!is.read(a.name.data(), static_cast<std::streamsize>(name_len))) {
      throw LoadError("truncated checkpoint " + path.string());
    }
    const auto rank = get<std::uint64_t>(is, path);
    if (rank > 16) throw LoadError("corrupt checkpoint: rank " + std::to_string(rank));
    std::uint64_t n = 1;
    for (std::uint64_t d = 0; d < rank; ++d) {
      const auto dim = get<std::uint64_t>(is, path);
      a.shape.push_back(dim);
      n *= dim;
      if (n > kMaxElements) throw LoadError("corrupt checkpoint: array '" + a.name + "' too large");
    }
    a.values.resize(n);
    for (auto& v : a.values) v = std::bit_cast<float>(get<std::uint32_t>(is, path));
    arrays.push_back(std::move(a));
  }
  return arrays;
}

template <typename T>
void save_parameters(const std::filesystem::path& path, const ParameterList<T>& params) {
  std::vector<CheckpointArray> arrays;
  for (const auto& p : params) {
    CheckpointArray a{p.name, p.tensor.shape(), {}};
    a.values.assign(p.tensor.data().begin(), p.tensor.data().end());
    arrays.push_back(std::move(a));
  }
  write_checkpoint(path, arrays);
}

template <typename T>
void load_parameters(const std::filesystem::path& path, ParameterList<T>& params) {
  std::map<std::string, CheckpointArray> stored;
  for (auto& a : read_checkpoint(path)) stored.emplace(a.name, std::move(a));

  std::ostringstream problems;
  std::size_t bad = 0;
  for (const auto& p : params) {
    auto it = stored.find(p.name);
    if (it == stored.end()) {
      problems << "\n  missing: " << p.name << " " << shape_str(p.tensor.shape());
      ++bad;
    } else if (it->second.shape != p.tensor.shape()) {
      problems << "\n  shape mismatch: " << p.name << " expected " << shape_str(p.tensor.shape())
               << " stored " << shape_str(it->second.shape);
      ++bad;
    }
  }
  for (const auto& [name, a] : stored) {
    bool known = false;
    for (const auto& p : params) known = known || p.name == name;
    if (!known) {
      problems << "\n  unexpected: " << name << " " << shape_str(a.shape);
      ++bad;
    }
  }
  if (bad) {
    throw LoadError("checkpoint " + path.string() + " does not match the model (" +
                    std::to_string(bad) + " arrays):" + problems.str());
  }
  for (auto& p : params) {
    const auto& src = stored.at(p.name).values;
    auto dst = p.tensor.mutable_data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = static_cast<T>(src[i]);
  }
}

template void save_parameters<float>(const std::filesystem::path&, const ParameterList<float>&);
template void save_parameters<double>(const std::filesystem::path&, const ParameterList<double>&);
template void load_parameters<float>(const std::filesystem::path&, ParameterList<float>&);
template void load_parameters<double>(const std::filesystem::path&, ParameterList<double>&);

}  // namespace sct
