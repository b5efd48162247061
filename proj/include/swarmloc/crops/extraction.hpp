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

#include <span>
#include <string>
#include <vector>

#include "swarmloc/crops/morphology.hpp"

namespace swarmloc::crops {

enum class ExtractionMethod { kManual, kAutomatic };

const char* to_string(ExtractionMethod method);

struct Provenance {
  std::string frame_id;
  ExtractionMethod method = ExtractionMethod::kAutomatic;
};

/// Tightly cropped, alpha-masked image of one robot.
struct RobotCrop {
  Image image;  // RGBA
  std::string robot_type;
  std::string instance_id;
  double canonical_orientation = 0.0;
  Provenance provenance;
};

struct ExtractionParams {
  int threshold = 25;
  int open_radius = 1;
  int close_radius = 2;
};

/// Keeps the largest 8-connected component of `mask`, crops `frame` to its
/// tight box and uses the component as alpha (255 inside, 0 outside).
///
/// Throws ExtractionFailed (carrying `frame_id`) when the mask is empty, and
/// InvalidArgument when frame and mask sizes differ.
RobotCrop extract_crop(const Image& frame, const BinaryMask& mask,
                       const std::string& robot_type,
                       const std::string& instance_id,
                       const std::string& frame_id = {},
                       ExtractionMethod method = ExtractionMethod::kAutomatic);

/// Background subtraction, refinement and extraction in one step.
RobotCrop extract_crop_automatic(const Image& frame, const Image& background,
                                 const std::string& robot_type,
                                 const std::string& instance_id,
                                 const ExtractionParams& params = {},
                                 const std::string& frame_id = {});

/// Applies one hand-drawn mask to every frame of a static-robot sequence.
/// Extraction errors are rethrown as ExtractionFailed naming the frame index.
std::vector<RobotCrop> manual_crop_sequence(std::span<const Image> frames,
                                            const BinaryMask& mask,
                                            const std::string& robot_type,
                                            const std::string& instance_id);

/// Rotates the crop by -measured_orientation and re-tightens it, so the
/// robot faces the canonical direction (orientation 0).
RobotCrop align_crop(const RobotCrop& crop, double measured_orientation);

/// Drops fully transparent border rows and columns. Returns the input
/// unchanged when it is already tight.
Image retighten(const Image& rgba);

}  // namespace swarmloc::crops
