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

#include "swarmloc/pipeline/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swarmloc/angles.hpp"
#include "swarmloc/errors.hpp"
#include "swarmloc/imaging/ops.hpp"

namespace swarmloc::pipeline {

void CameraModel::validate() const {
  if (!(fx > 0) || !(fy > 0)) throw InvalidArgument("camera focal lengths must be positive");
  if (!(height_m > 0)) throw InvalidArgument("camera height must be positive");
  if (!std::isfinite(cx) || !std::isfinite(cy)) {
    throw InvalidArgument("camera principal point must be finite");
  }
}

void PipelineConfig::validate() const {
  if (stage1_resolution.width < 1 || stage1_resolution.height < 1) {
    throw ConfigError("stage-1 resolution must be at least 1x1");
  }
  if (stage2_input < 1) throw ConfigError("stage-2 input size must be >= 1");
  if (!(rotation_step_deg > 0) || rotation_step_deg > 360) {
    throw ConfigError("rotation step must lie in (0, 360]");
  }
  if (camera) {
    try {
      camera->validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
}

int bin_orientation(double theta_deg) {
  if (!std::isfinite(theta_deg)) throw InvalidArgument("orientation must be finite");
  const int bin = static_cast<int>(std::floor(normalize_degrees(theta_deg)));
  return std::min(bin, kOrientationBins - 1);
}

double bin_center(int bin) {
  if (bin < 0 || bin >= kOrientationBins) {
    throw InvalidArgument("orientation bin " + std::to_string(bin) + " outside 0..359");
  }
  return bin + 0.5;
}

std::array<double, 2> project_to_ground(double u, double v, const CameraModel& camera,
                                        std::optional<double> plane_distance_m) {
  const double d = plane_distance_m.value_or(camera.height_m);
  return {d * (u - camera.cx) / camera.fx, d * (v - camera.cy) / camera.fy};
}

Image downsample(const Image& frame, Size target) {
  return imaging::resize_area(frame, target);
}

BBox rescale_bbox(const BBox& box, Size from, Size to) {
  auto lo = [](int v, int num, int den) {
    return static_cast<int>((static_cast<long long>(v) * num) / den);
  };
  auto hi = [](int v, int num, int den) {
    return static_cast<int>((static_cast<long long>(v) * num + den - 1) / den);
  };
  const int x0 = std::clamp(lo(box.x_min(), to.width, from.width), 0, to.width - 1);
  const int y0 = std::clamp(lo(box.y_min(), to.height, from.height), 0, to.height - 1);
  const int x1 = std::clamp(hi(box.x_max(), to.width, from.width), x0 + 1, to.width);
  const int y1 = std::clamp(hi(box.y_max(), to.height, from.height), y0 + 1, to.height);
  return {x0, y0, x1, y1};
}

}  // namespace swarmloc::pipeline
