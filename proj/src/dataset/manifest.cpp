// Copyright (c) 2026 The swarmloc Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swarmloc/dataset/manifest.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "swarmloc/angles.hpp"
#include "swarmloc/dataset/atomic_file.hpp"
#include "swarmloc/errors.hpp"
#include "swarmloc/imaging/io.hpp"

namespace swarmloc::dataset {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Rounds to 1/per_unit; dividing keeps m/10^k bit-identical on re-read.
double round_to(double v, double per_unit) { return std::round(v * per_unit) / per_unit; }

json robot_to_json(const GroundTruthRecord& r) {
  json j;
  j["type"] = r.robot_type;
  j["id"] = r.instance_id;
  j["bbox"] = {r.bbox.x_min(), r.bbox.y_min(), r.bbox.x_max(), r.bbox.y_max()};
  j["orientation_deg"] = quantize_degrees(r.orientation);
  j["visibility"] = round_to(r.visibility, 1e4);
  return j;
}

GroundTruthRecord robot_from_json(const json& j) {
  GroundTruthRecord r;
  r.robot_type = j.at("type").get<std::string>();
  r.instance_id = j.at("id").get<std::string>();
  const auto& b = j.at("bbox");
  if (!b.is_array() || b.size() != 4) {
    throw std::invalid_argument("bbox must be [x0,y0,x1,y1]");
  }
  r.bbox = imaging::BBox(b[0].get<int>(), b[1].get<int>(), b[2].get<int>(),
                         b[3].get<int>());
  r.orientation = j.at("orientation_deg").get<double>();
  if (!(r.orientation >= 0 && r.orientation < 360)) {
    throw std::invalid_argument("orientation_deg outside [0, 360)");
  }
  r.visibility = j.value("visibility", 1.0);
  if (!(r.visibility >= 0 && r.visibility <= 1)) {
    throw std::invalid_argument("visibility outside [0, 1]");
  }
  return r;
}

}  // namespace

BalanceCounts recount(const std::vector<FrameRecord>& frames) {
  BalanceCounts counts;
  for (const auto& f : frames) {
    if (!f.background.empty()) ++counts["background"][f.background];
    for (const auto& r : f.robots) {
      ++counts["type"][r.robot_type];
      ++counts["instance"][r.robot_type + "/" + r.instance_id];
    }
  }
  return counts;
}

fs::path meta_path_for(const fs::path& manifest_path) {
  fs::path meta = manifest_path;
  meta.replace_extension(".meta.json");
  return meta;
}

std::string frame_to_json_line(const FrameRecord& frame) {
  json j;
  j["image"] = frame.image;
  j["width"] = frame.width;
  j["height"] = frame.height;
  j["seed"] = frame.seed;
  j["robots"] = json::array();
  for (const auto& r : frame.robots) j["robots"].push_back(robot_to_json(r));
  j["decoys"] = frame.decoys;
  if (!frame.background.empty()) j["background"] = frame.background;
  if (!frame.tags.empty()) j["tags"] = frame.tags;
  return j.dump();
}

FrameRecord frame_from_json_line(const std::string& line, std::size_t line_no) {
  try {
    const json j = json::parse(line);
    FrameRecord f;
    f.image = j.at("image").get<std::string>();
    f.width = j.at("width").get<int>();
    f.height = j.at("height").get<int>();
    f.seed = j.value("seed", std::uint64_t{0});
    for (const auto& r : j.at("robots")) f.robots.push_back(robot_from_json(r));
    f.decoys = j.value("decoys", 0);
    f.background = j.value("background", std::string{});
    if (j.contains("tags")) {
      f.tags = j.at("tags").get<std::map<std::string, std::string>>();
    }
    return f;
  } catch (const json::exception& e) {
    throw ParseError(line_no, e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(line_no, e.what());
  }
}

void write_manifest(const DatasetManifest& manifest, const fs::path& path) {
  std::string body;
  for (const auto& f : manifest.frames) {
    body += frame_to_json_line(f);
    body += '\n';
  }
  json meta;
  meta["spec_hash"] = manifest.meta.spec_hash;
  meta["seed"] = manifest.meta.seed;
  meta["created"] = manifest.meta.created ? json(*manifest.meta.created) : json(nullptr);
  meta["frames"] = manifest.frames.size();
  meta["counts"] = manifest.meta.counts;
  write_file_atomic(meta_path_for(path), meta.dump(2) + "\n");
  write_file_atomic(path, body);
}

DatasetManifest read_manifest(const fs::path& path, bool validate) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  DatasetManifest m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    m.frames.push_back(frame_from_json_line(line, line_no));
  }

  const fs::path meta_file = meta_path_for(path);
  bool have_meta = false;
  if (fs::exists(meta_file)) {
    std::ifstream meta_in(meta_file);
    try {
      const json meta = json::parse(meta_in);
      m.meta.spec_hash = meta.value("spec_hash", std::string{});
      m.meta.seed = meta.value("seed", std::uint64_t{0});
      if (meta.contains("created") && meta["created"].is_string()) {
        m.meta.created = meta["created"].get<std::string>();
      }
      if (meta.contains("counts")) m.meta.counts = meta["counts"].get<BalanceCounts>();
      have_meta = true;
    } catch (const json::exception& e) {
      throw ParseError(1, meta_file.string() + ": " + e.what());
    }
  } else {
    m.meta.counts = recount(m.frames);
  }

  if (validate) {
    std::ostringstream problems;
    const fs::path root = path.parent_path();
    for (std::size_t i = 0; i < m.frames.size(); ++i) {
      const auto& f = m.frames[i];
      const fs::path image = root / f.image;
      if (!fs::exists(image)) {
        problems << "\n  frame " << i << " (" << f.image << "): missing image";
        continue;
      }
      const auto size = imaging::read_image_size(image);
      if (size.width != f.width || size.height != f.height) {
        problems << "\n  frame " << i << " (" << f.image << "): image is "
                 << size.width << "x" << size.height << ", manifest says "
                 << f.width << "x" << f.height;
      }
      for (const auto& r : f.robots) {
        if (r.bbox.x_min() < 0 || r.bbox.y_min() < 0 || r.bbox.x_max() > f.width ||
            r.bbox.y_max() > f.height) {
          problems << "\n  frame " << i << " (" << f.image
                   << "): bbox outside the frame";
        }
      }
    }
    if (have_meta && m.meta.counts != recount(m.frames)) {
      problems << "\n  metadata counts differ from the frame records";
    }
    const std::string text = problems.str();
    if (!text.empty()) {
      throw ValidationError("manifest " + path.string() + " failed validation:" + text);
    }
  }
  return m;
}

}  // namespace swarmloc::dataset
