// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "sct/errors.hpp"
#include "sct/harness.hpp"

namespace sct::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t to_size(const std::string& key, const std::string& v) {
  std::size_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError("config: " + key + " expects a non-negative integer, got '" + v + "'");
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + " expects a number, got '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("config: " + key + " expects a boolean, got '" + v + "'");
}

}  // namespace

model::ModelConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  model::ModelConfig c;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto sz = [](std::size_t& f) { return Setter([&f](auto& k, auto& v) { f = to_size(k, v); }); };
  auto dbl = [](double& f) { return Setter([&f](auto& k, auto& v) { f = to_double(k, v); }); };
  auto bln = [](bool& f) { return Setter([&f](auto& k, auto& v) { f = to_bool(k, v); }); };
  const std::map<std::string, Setter> setters = {
      {"layers", sz(c.layers)},
      {"channels", sz(c.channels)},
      {"frames", sz(c.frames)},
      {"joints", sz(c.joints)},
      {"heads", sz(c.heads)},
      {"mlp_ratio", sz(c.mlp_ratio)},
      {"sigma", dbl(c.sigma)},
      {"lambda", dbl(c.lambda)},
      {"dropout", dbl(c.dropout)},
      {"compress", bln(c.compress)},
      {"use_lpg", bln(c.use_lpg)},
      {"lr", dbl(c.lr)},
      {"lr_decay", dbl(c.lr_decay)},
      {"weight_decay", dbl(c.weight_decay)},
      {"batch_size", sz(c.batch_size)},
      {"epochs", sz(c.epochs)},
      {"max_steps", sz(c.max_steps)},
      {"flip_augment", bln(c.flip_augment)},
      {"seed", [&c](auto& k, auto& v) { c.seed = to_size(k, v); }},
      {"unit_mm", dbl(c.unit_mm)},
      {"topology",
       [&c, &base_dir](auto&, auto& v) {
         std::filesystem::path p(v);
         if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
         c.topology = p.string();
       }},
  };
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    it->second(key, value);
  }
  c.validate();
  return c;
}

model::ModelConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  auto cfg = parse_config(in, path.parent_path());
  if (const char* env = std::getenv("SCT_SEED"); env != nullptr && *env != '\0') {
    cfg.seed = to_size("SCT_SEED", env);
  }
  return cfg;
}

void write_config(std::ostream& out, const model::ModelConfig& c) {
  const auto precision = out.precision(12);
  out << "layers = " << c.layers << '\n'
      << "channels = " << c.channels << '\n'
      << "frames = " << c.frames << '\n'
      << "joints = " << c.joints << '\n'
      << "heads = " << c.heads << '\n'
      << "mlp_ratio = " << c.mlp_ratio << '\n'
      << "sigma = " << c.sigma << '\n'
      << "lambda = " << c.lambda << '\n'
      << "dropout = " << c.dropout << '\n'
      << "compress = " << (c.compress ? "true" : "false") << '\n'
      << "use_lpg = " << (c.use_lpg ? "true" : "false") << '\n'
      << "lr = " << c.lr << '\n'
      << "lr_decay = " << c.lr_decay << '\n'
      << "weight_decay = " << c.weight_decay << '\n'
      << "batch_size = " << c.batch_size << '\n'
      << "epochs = " << c.epochs << '\n'
      << "max_steps = " << c.max_steps << '\n'
      << "flip_augment = " << (c.flip_augment ? "true" : "false") << '\n'
      << "seed = " << c.seed << '\n'
      << "unit_mm = " << c.unit_mm << '\n';
  if (!c.topology.empty()) out << "topology = " << std::filesystem::absolute(c.topology).string() << '\n';
  out.precision(precision);
}

lpg::SkeletonTopology topology_for(const model::ModelConfig& cfg) {
  auto topo = cfg.topology.empty() ? lpg::SkeletonTopology::h36m() : lpg::SkeletonTopology::load(cfg.topology);
  if (topo.joint_count() != cfg.joints) {
    throw ConfigError("config: joints = " + std::to_string(cfg.joints) + " but topology has " +
                      std::to_string(topo.joint_count()));
  }
  return topo;
}

}  // namespace sct::harness
