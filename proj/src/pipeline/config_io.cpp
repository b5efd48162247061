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

#include "swarmloc/pipeline/config_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "swarmloc/dataset/crop_library_io.hpp"
#include "swarmloc/errors.hpp"
#include "swarmloc/imaging/io.hpp"

namespace swarmloc::pipeline {

using json = nlohmann::ordered_json;

namespace {

std::string resolve(const std::string& p, const std::filesystem::path& base) {
  if (p.empty() || base.empty()) return p;
  const std::filesystem::path path(p);
  return path.is_absolute() ? p : (base / path).lexically_normal().string();
}

}  // namespace

PipelineSettings pipeline_settings_from_json(std::string_view text,
                                             const std::filesystem::path& base_dir) {
  PipelineSettings s;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("pipeline config must be a JSON object");
    auto& c = s.config;
    if (j.contains("stage1_resolution")) {
      const auto& r = j["stage1_resolution"];
      c.stage1_resolution = {r.at(0).get<int>(), r.at(1).get<int>()};
    }
    c.stage2_input = j.value("stage2_input", c.stage2_input);
    c.rotation_step_deg = j.value("rotation_step_deg", c.rotation_step_deg);
    c.threads = j.value("threads", c.threads);
    if (j.contains("camera") && !j["camera"].is_null()) {
      const auto& cam = j["camera"];
      c.camera = CameraModel{cam.at("fx").get<double>(), cam.at("fy").get<double>(),
                             cam.at("cx").get<double>(), cam.at("cy").get<double>(),
                             cam.at("height_m").get<double>()};
    }
    if (j.contains("reference")) {
      const auto& r = j["reference"];
      ReferenceSettings ref;
      ref.background = resolve(r.value("background", std::string{}), base_dir);
      ref.templates = resolve(r.value("templates", std::string{}), base_dir);
      for (const auto& p : r.value("priors", json::array())) {
        SizePrior prior;
        prior.robot_type = p.at("type").get<std::string>();
        prior.min_area = p.at("area").at(0).get<double>();
        prior.max_area = p.at("area").at(1).get<double>();
        if (p.contains("elongation")) {
          prior.min_elongation = p["elongation"].at(0).get<double>();
          prior.max_elongation = p["elongation"].at(1).get<double>();
        } else {
          prior.max_elongation = 100.0;
        }
        ref.priors.push_back(prior);
      }
      auto& d = ref.detector;
      d.mask.threshold = r.value("threshold", d.mask.threshold);
      d.mask.open_radius = r.value("open_radius", d.mask.open_radius);
      d.mask.close_radius = r.value("close_radius", d.mask.close_radius);
      d.min_confidence = r.value("min_confidence", d.min_confidence);
      d.min_component_area = r.value("min_component_area", d.min_component_area);
      s.reference = std::move(ref);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed pipeline config: ") + e.what());
  }
  s.config.validate();
  return s;
}

PipelineSettings read_pipeline_settings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pipeline config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return pipeline_settings_from_json(buffer.str(), path.parent_path());
}

std::string pipeline_settings_to_json(const PipelineSettings& settings) {
  const auto& c = settings.config;
  json j;
  j["stage1_resolution"] = {c.stage1_resolution.width, c.stage1_resolution.height};
  j["stage2_input"] = c.stage2_input;
  j["rotation_step_deg"] = c.rotation_step_deg;
  j["threads"] = c.threads;
  if (c.camera) {
    j["camera"] = {{"fx", c.camera->fx}, {"fy", c.camera->fy}, {"cx", c.camera->cx},
                   {"cy", c.camera->cy}, {"height_m", c.camera->height_m}};
  }
  if (settings.reference) {
    const auto& r = *settings.reference;
    json ref;
    ref["background"] = r.background;
    ref["templates"] = r.templates;
    ref["priors"] = json::array();
    for (const auto& p : r.priors) {
      ref["priors"].push_back({{"type", p.robot_type},
                               {"area", {p.min_area, p.max_area}},
                               {"elongation", {p.min_elongation, p.max_elongation}}});
    }
    ref["threshold"] = r.detector.mask.threshold;
    ref["open_radius"] = r.detector.mask.open_radius;
    ref["close_radius"] = r.detector.mask.close_radius;
    ref["min_confidence"] = r.detector.min_confidence;
    ref["min_component_area"] = r.detector.min_component_area;
    j["reference"] = std::move(ref);
  }
  return j.dump(2);
}

BackendMap ReferenceBackends::view() const {
  BackendMap map;
  for (const auto& [type, head] : heads) map[type] = head.get();
  return map;
}

ReferenceBackends make_reference_backends(const ReferenceSettings& settings,
                                          const PipelineConfig& config) {
  if (settings.background.empty()) throw ConfigError("reference backend needs a background image");
  if (settings.templates.empty()) throw ConfigError("reference backend needs a template library");
  ReferenceBackends out;
  out.detector = std::make_unique<ReferenceDetector>(
      imaging::read_image(settings.background), settings.priors, settings.detector);
  const auto library = dataset::load_crop_library(settings.templates).library;
  for (const auto& [type, ids] : library.crops) {
    std::map<std::string, Image> templates;
    for (const auto& [id, list] : ids) {
      if (!list.empty()) templates.emplace(id, list.front().image);
    }
    out.heads[type] = std::make_unique<ReferenceSecondStage>(
        RotationTemplateSet(templates, config.rotation_step_deg, config.stage2_input));
  }
  return out;
}

}  // namespace swarmloc::pipeline
