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

#include "swarmloc/pipeline/two_stage.hpp"

#include "swarmloc/errors.hpp"
#include "swarmloc/imaging/ops.hpp"
#include "swarmloc/parallel.hpp"
#include "swarmloc/pipeline/geometry.hpp"

namespace swarmloc::pipeline {

Image prepare_stage2_crop(const Image& frame, const BBox& box, int side) {
  const auto clipped = imaging::clip_to(box, frame.width(), frame.height());
  if (!clipped) throw InvalidArgument("detection box lies outside the frame");
  const Image square = imaging::pad_to_square_replicate(imaging::crop(frame, *clipped));
  return imaging::resize(square, {side, side});
}

std::vector<TrackedRobot> merge_outputs(std::span<const Detection> detections,
                                        std::span<const PoseEstimate> poses,
                                        std::size_t frame_index,
                                        const CameraModel* camera) {
  if (detections.size() != poses.size()) {
    throw InternalConsistencyError(
        "merge got " + std::to_string(detections.size()) + " detections but " +
        std::to_string(poses.size()) + " pose estimates");
  }
  std::vector<TrackedRobot> out;
  out.reserve(detections.size());
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const Detection& d = detections[i];
    const PoseEstimate& p = poses[i];
    TrackedRobot r;
    r.robot_type = d.robot_type;
    r.instance_id = p.instance_id;
    r.bbox = d.bbox;
    r.orientation_deg = p.orientation_deg;
    r.confidence = d.confidence;
    r.id_confidence = p.id_confidence;
    r.frame_index = frame_index;
    if (camera != nullptr) {
      const double altitude = d.altitude_m.value_or(0.0);
      const auto xy = project_to_ground(d.bbox.center_x(), d.bbox.center_y(), *camera,
                                        camera->height_m - altitude);
      r.position_m = std::array<double, 3>{xy[0], xy[1], altitude};
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TrackedRobot> run_two_stage(const Image& frame, const DetectorBackend& detector,
                                        const BackendMap& backends,
                                        const PipelineConfig& config,
                                        std::size_t frame_index) {
  const Size full{frame.width(), frame.height()};
  const Image small = downsample(frame, config.stage1_resolution);
  std::vector<Detection> detections = detector.detect(small);
  for (auto& d : detections) {
    d.bbox = rescale_bbox(d.bbox, config.stage1_resolution, full);
    if (backends.find(d.robot_type) == backends.end() ||
        backends.at(d.robot_type) == nullptr) {
      throw ConfigError("no second-stage backend registered for robot type '" +
                        d.robot_type + "'");
    }
  }

  std::vector<PoseEstimate> poses(detections.size());
  parallel_for(detections.size(), config.threads, [&](std::size_t i) {
    const Image crop = prepare_stage2_crop(frame, detections[i].bbox, config.stage2_input);
    poses[i] = backends.at(detections[i].robot_type)->estimate(crop, detections[i].robot_type);
  });
  return merge_outputs(detections, poses, frame_index,
                       config.camera ? &*config.camera : nullptr);
}

}  // namespace swarmloc::pipeline
