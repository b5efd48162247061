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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "swarmloc/imaging/image.hpp"

namespace swarmloc::pipeline {

using imaging::BBox;
using imaging::Image;
using imaging::Size;

/// Stage-1 output.
struct Detection {
  std::string robot_type;
  BBox bbox;
  double confidence = 0.0;  // [0, 1]
  /// Altitude above the floor for flying robots, from an on-board sensor.
  std::optional<double> altitude_m;
};

/// Stage-2 output.
struct PoseEstimate {
  std::string instance_id;
  double orientation_deg = 0.0;     // [0, 360)
  std::optional<int> orientation_bin;  // set by discrete (360-bin) heads
  double id_confidence = 0.0;       // [0, 1]
};

struct TrackedRobot {
  std::string robot_type;
  std::string instance_id;
  BBox bbox;
  double orientation_deg = 0.0;
  double confidence = 0.0;
  double id_confidence = 0.0;
  std::optional<std::array<double, 3>> position_m;
  std::size_t frame_index = 0;
};

/// Downward-looking pinhole camera mounted `height_m` above the floor.
struct CameraModel {
  double fx = 0, fy = 0;
  double cx = 0, cy = 0;
  double height_m = 0;

  /// Throws InvalidArgument unless fx, fy and height are positive.
  void validate() const;
};

/// Stage-1 detector. Receives the downsampled frame and reports boxes in
/// that frame's coordinates. Must be safe for concurrent const use.
class DetectorBackend {
 public:
  virtual ~DetectorBackend() = default;
  virtual std::vector<Detection> detect(const Image& frame) const = 0;
};

/// Stage-2 identification and orientation head for one robot type. Receives a
/// square RGB crop at the configured stage-2 input size.
class SecondStageBackend {
 public:
  virtual ~SecondStageBackend() = default;
  virtual PoseEstimate estimate(const Image& crop, const std::string& robot_type) const = 0;
};

struct PipelineConfig {
  Size stage1_resolution{400, 300};
  int stage2_input = 128;
  double rotation_step_deg = 1.0;
  std::optional<CameraModel> camera;
  int threads = 1;

  void validate() const;
};

}  // namespace swarmloc::pipeline
