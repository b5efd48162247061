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

#include "swarmloc/pipeline/types.hpp"

namespace swarmloc::pipeline {

inline constexpr int kOrientationBins = 360;

/// floor(theta mod 360). Throws InvalidArgument for non-finite input.
int bin_orientation(double theta_deg);
/// Center of a one-degree bin: bin + 0.5. Throws InvalidArgument outside 0..359.
double bin_center(int bin);

/// Floor-plane coordinates (meters, camera nadir at the origin) of pixel
/// (u, v): x = d (u - cx) / fx, y = d (v - cy) / fy, where d is the distance
/// from the camera to the plane the point lies on (the mounting height
/// unless overridden).
std::array<double, 2> project_to_ground(double u, double v, const CameraModel& camera,
                                        std::optional<double> plane_distance_m = std::nullopt);

/// Area-averaging resample to the stage-1 resolution.
Image downsample(const Image& frame, Size target);

/// Maps a box between two resolutions of the same frame, rounding outward
/// and clamping to the target extent.
BBox rescale_bbox(const BBox& box, Size from, Size to);

}  // namespace swarmloc::pipeline
