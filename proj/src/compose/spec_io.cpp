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

#include "swarmloc/compose/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "swarmloc/errors.hpp"

namespace swarmloc::compose {

using json = nlohmann::ordered_json;

namespace {

std::string resolve(const std::string& p, const std::filesystem::path& base) {
  if (p.empty() || base.empty()) return p;
  const std::filesystem::path path(p);
  return path.is_absolute() ? p : (base / path).lexically_normal().string();
}

}  // namespace

std::string composition_spec_to_json(const CompositionSpec& spec) {
  json j;
  j["backgrounds"] = spec.background_dirs;
  j["crops"] = spec.crop_library;
  j["decoys"] = spec.decoy_library;
  j["frames"] = spec.frame_count;
  j["robots_per_frame"] = {spec.robots_per_frame.min, spec.robots_per_frame.max};
  j["scale_range"] = {spec.scale_range.min, spec.scale_range.max};
  j["seed"] = spec.seed;
  j["balance"] = {{"backgrounds", spec.balance_backgrounds},
                  {"types", spec.balance_types},
                  {"instances", spec.balance_instances}};
  j["decoys_per_frame"] = spec.decoys_per_frame;
  j["random_rotation"] = spec.random_rotation;
  j["min_on_canvas"] = spec.min_on_canvas;
  j["allow_robot_overlap"] = spec.allow_robot_overlap;
  j["clearance"] = spec.clearance;
  j["max_placement_attempts"] = spec.max_placement_attempts;
  return j.dump();
}

CompositionSpec composition_spec_from_json(std::string_view text,
                                           const std::filesystem::path& base_dir) {
  CompositionSpec spec;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("composition spec must be a JSON object");
    if (j.contains("backgrounds")) {
      for (const auto& d : j["backgrounds"]) {
        spec.background_dirs.push_back(resolve(d.get<std::string>(), base_dir));
      }
    }
    spec.crop_library = resolve(j.value("crops", spec.crop_library), base_dir);
    spec.decoy_library = resolve(j.value("decoys", spec.decoy_library), base_dir);
    spec.frame_count = j.value("frames", spec.frame_count);
    if (j.contains("robots_per_frame")) {
      const auto& r = j["robots_per_frame"];
      spec.robots_per_frame = {r.at(0).get<int>(), r.at(1).get<int>()};
    }
    if (j.contains("scale_range")) {
      const auto& r = j["scale_range"];
      spec.scale_range = {r.at(0).get<double>(), r.at(1).get<double>()};
    }
    spec.seed = j.value("seed", spec.seed);
    if (j.contains("balance")) {
      const auto& b = j["balance"];
      spec.balance_backgrounds = b.value("backgrounds", spec.balance_backgrounds);
      spec.balance_types = b.value("types", spec.balance_types);
      spec.balance_instances = b.value("instances", spec.balance_instances);
    }
    spec.decoys_per_frame = j.value("decoys_per_frame", spec.decoys_per_frame);
    spec.random_rotation = j.value("random_rotation", spec.random_rotation);
    spec.min_on_canvas = j.value("min_on_canvas", spec.min_on_canvas);
    spec.allow_robot_overlap = j.value("allow_robot_overlap", spec.allow_robot_overlap);
    spec.clearance = j.value("clearance", spec.clearance);
    spec.max_placement_attempts =
        j.value("max_placement_attempts", spec.max_placement_attempts);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed composition spec: ") + e.what());
  }
  return spec;
}

CompositionSpec read_composition_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open composition spec " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return composition_spec_from_json(buffer.str(), path.parent_path());
}

}  // namespace swarmloc::compose
