// Copyright (C) 2026 The sct-lift Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "sct/errors.hpp"
#include "sct/lpg.hpp"

namespace sct::lpg {

namespace {

using nlohmann::json;

// `dims` is the coordinate count; a trailing extra entry per joint is read as
// confidence.
PoseSequence parse_frames(const json& frames, std::size_t joints, std::size_t dims, double fps) {
  if (!frames.is_array() || frames.empty()) throw LoadError("pose file: empty frames");
  PoseSequence p(frames.size(), joints, dims);
  p.fps = fps;
  bool conf = false;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const auto& fr = frames[f];
    if (!fr.is_array() || fr.size() != joints) {
      throw LoadError("pose file: frame " + std::to_string(f) + " does not have " +
                      std::to_string(joints) + " joints");
    }
    for (std::size_t j = 0; j < joints; ++j) {
      const auto& pt = fr[j];
      if (f == 0 && j == 0) {
        conf = pt.size() == dims + 1;
        if (conf) p.confidence.assign(p.frames * joints, 1.0);
      }
      if (pt.size() != dims + (conf ? 1 : 0)) throw LoadError("pose file: inconsistent point width");
      for (std::size_t d = 0; d < dims; ++d) p.at(f, j, d) = pt[d].get<double>();
      if (conf) p.confidence[f * joints + j] = pt[dims].get<double>();
    }
  }
  try {
    p.validate();
  } catch (const ContractError& e) {
    throw LoadError(std::string("pose file: ") + e.what());
  }
  return p;
}

json dump_frames(const PoseSequence& p) {
  json frames = json::array();
  for (std::size_t f = 0; f < p.frames; ++f) {
    json fr = json::array();
    for (std::size_t j = 0; j < p.joints; ++j) {
      json pt = json::array();
      for (std::size_t d = 0; d < p.dims; ++d) pt.push_back(p.at(f, j, d));
      if (p.has_confidence()) pt.push_back(p.confidence[f * p.joints + j]);
      fr.push_back(std::move(pt));
    }
    frames.push_back(std::move(fr));
  }
  return frames;
}

}  // namespace

std::vector<PoseClip> read_pose_lines(std::istream& in) {
  std::vector<PoseClip> clips;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto doc = json::parse(line);
      const auto joints = doc.at("joints").get<std::size_t>();
      const double fps = doc.value("fps", 50.0);
      const auto& frames = doc.at("frames");
      std::size_t dims = 0;
      if (doc.contains("dims")) {
        dims = doc.at("dims").get<std::size_t>();
      } else {
        // Without an explicit width, 2 or 3 entries are plain coordinates.
        dims = frames.at(0).at(0).size();
      }
      if (dims < 2 || dims > 3) throw LoadError("pose file: dims must be 2 or 3");
      PoseClip clip;
      clip.pose = parse_frames(frames, joints, dims, fps);
      if (doc.contains("input2d")) clip.input2d = parse_frames(doc.at("input2d"), joints, 2, fps);
      if (clip.input2d && clip.input2d->frames != clip.pose.frames) {
        throw LoadError("pose file: input2d and frames lengths differ");
      }
      clips.push_back(std::move(clip));
    } catch (const json::exception& e) {
      throw LoadError("pose file line " + std::to_string(lineno) + ": " + e.what());
    } catch (const LoadError& e) {
      throw LoadError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return clips;
}

std::vector<PoseClip> read_pose_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open pose file " + path.string());
  return read_pose_lines(in);
}

void write_pose_lines(std::ostream& out, const std::vector<PoseClip>& clips) {
  for (const auto& c : clips) {
    json doc;
    doc["fps"] = c.pose.fps;
    doc["joints"] = c.pose.joints;
    doc["dims"] = c.pose.dims;
    doc["frames"] = dump_frames(c.pose);
    if (c.input2d) doc["input2d"] = dump_frames(*c.input2d);
    out << doc.dump() << '\n';
  }
}

void write_pose_file(const std::filesystem::path& path, const std::vector<PoseClip>& clips) {
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write pose file " + path.string());
  write_pose_lines(out, clips);
}

}  // namespace sct::lpg
