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

#include "swarmloc/crops/extraction.hpp"

#include "swarmloc/errors.hpp"
#include "swarmloc/imaging/ops.hpp"

namespace swarmloc::crops {

const char* to_string(ExtractionMethod method) {
  return method == ExtractionMethod::kManual ? "manual" : "automatic";
}

RobotCrop extract_crop(const Image& frame, const BinaryMask& mask,
                       const std::string& robot_type,
                       const std::string& instance_id,
                       const std::string& frame_id, ExtractionMethod method) {
  if (frame.width() != mask.width() || frame.height() != mask.height()) {
    throw InvalidArgument("mask size differs from frame " + frame_id);
  }
  if (!mask.any()) {
    throw ExtractionFailed(frame_id, "empty robot mask in frame '" + frame_id + "'");
  }
  const BinaryMask object = largest_component(mask);
  const BBox box = imaging::tight_bbox(object);
  RobotCrop crop;
  crop.image = imaging::with_alpha(imaging::crop(frame, box),
                                   imaging::crop(object, box));
  crop.robot_type = robot_type;
  crop.instance_id = instance_id;
  crop.provenance = {frame_id, method};
  return crop;
}

RobotCrop extract_crop_automatic(const Image& frame, const Image& background,
                                 const std::string& robot_type,
                                 const std::string& instance_id,
                                 const ExtractionParams& params,
                                 const std::string& frame_id) {
  const BinaryMask raw =
      background_subtract_mask(frame, background, params.threshold);
  const BinaryMask refined =
      refine_mask(raw, params.open_radius, params.close_radius);
  return extract_crop(frame, refined, robot_type, instance_id, frame_id,
                      ExtractionMethod::kAutomatic);
}

std::vector<RobotCrop> manual_crop_sequence(std::span<const Image> frames,
                                            const BinaryMask& mask,
                                            const std::string& robot_type,
                                            const std::string& instance_id) {
  std::vector<RobotCrop> out;
  out.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const std::string frame_id = std::to_string(i);
    try {
      out.push_back(extract_crop(frames[i], mask, robot_type, instance_id,
                                 frame_id, ExtractionMethod::kManual));
    } catch (const InvalidArgument& e) {
      throw ExtractionFailed(frame_id, "frame " + frame_id + ": " + e.what());
    }
  }
  return out;
}

Image retighten(const Image& rgba) {
  const BBox box = imaging::tight_bbox(rgba);
  if (box.width() == rgba.width() && box.height() == rgba.height()) return rgba;
  return imaging::crop(rgba, box);
}

RobotCrop align_crop(const RobotCrop& crop, double measured_orientation) {
  RobotCrop out = crop;
  out.image = retighten(imaging::transform_rgba(crop.image, 1.0, -measured_orientation));
  out.canonical_orientation = 0.0;
  return out;
}

}  // namespace swarmloc::crops
