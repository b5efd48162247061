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

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarmloc/pipeline/reference.hpp"
#include "swarmloc/pipeline/two_stage.hpp"

namespace swarmloc::pipeline {

/// Files and parameters the reference backends are built from.
struct ReferenceSettings {
  std::string background;  // image path; same size as the input frames
  std::string templates;   // crop library root, first crop per instance used
  std::vector<SizePrior> priors;
  ReferenceDetectorParams detector;
};

struct PipelineSettings {
  PipelineConfig config;
  std::optional<ReferenceSettings> reference;
};

/// Keys: stage1_resolution [w,h], stage2_input, rotation_step_deg,
/// camera {fx, fy, cx, cy, height_m}, threads, reference {background,
/// templates, priors [{type, area [min,max], elongation [min,max]}],
/// threshold, open_radius, close_radius, min_confidence}. Relative paths
/// resolve against `base_dir`. Throws ConfigError.
PipelineSettings pipeline_settings_from_json(std::string_view text,
                                             const std::filesystem::path& base_dir = {});
PipelineSettings read_pipeline_settings(const std::filesystem::path& path);
std::string pipeline_settings_to_json(const PipelineSettings& settings);

/// Owning bundle of reference backends with a non-owning BackendMap view.
struct ReferenceBackends {
  std::unique_ptr<ReferenceDetector> detector;
  std::map<std::string, std::unique_ptr<ReferenceSecondStage>> heads;

  BackendMap view() const;
};

/// Loads the background and templates and renders the rotation sweeps.
ReferenceBackends make_reference_backends(const ReferenceSettings& settings,
                                          const PipelineConfig& config);

}  // namespace swarmloc::pipeline
