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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "swarmloc/pipeline/types.hpp"

namespace swarmloc::pipeline {

/// Second-stage heads keyed by robot type.
using BackendMap = std::map<std::string, const SecondStageBackend*>;

/// Exact-box crop of the full-resolution frame, padded to a square by edge
/// replication and resized to side x side.
Image prepare_stage2_crop(const Image& frame, const BBox& box, int side);

/// One TrackedRobot per detection, fields taken from the index-aligned pose.
/// With a camera, position_m is the ground projection of the box center
/// (z = 0), or of the plane at the robot's altitude for flying robots (z =
/// altitude). Throws InternalConsistencyError when the lengths differ.
std::vector<TrackedRobot> merge_outputs(std::span<const Detection> detections,
                                        std::span<const PoseEstimate> poses,
                                        std::size_t frame_index,
                                        const CameraModel* camera = nullptr);

/// Full two-stage inference on one frame: downsample to the stage-1
/// resolution, detect, map boxes back to full resolution, crop per
/// detection, run the type's second-stage head and merge. Throws ConfigError
/// when a detected type has no registered head.
std::vector<TrackedRobot> run_two_stage(const Image& frame, const DetectorBackend& detector,
                                        const BackendMap& backends,
                                        const PipelineConfig& config,
                                        std::size_t frame_index = 0);

}  // namespace swarmloc::pipeline
