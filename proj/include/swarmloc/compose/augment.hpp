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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swarmloc/compose/ground_truth.hpp"
#include "swarmloc/imaging/image.hpp"

namespace swarmloc::compose {

enum class FlipAxis {
  kHorizontal,  // mirror across the vertical axis (x -> W - x)
  kVertical,    // mirror across the horizontal axis (y -> H - y)
};

/// Orientation after mirroring: horizontal maps t to 180 - t, vertical to
/// 360 - t, both wrapped onto [0, 360) at 0.01 degree resolution.
double flip_orientation(double orientation, FlipAxis axis);

struct AugmentedFrame {
  imaging::Image image;
  std::vector<GroundTruthRecord> gt;
};

AugmentedFrame flip_augment(const imaging::Image& frame,
                            std::span<const GroundTruthRecord> gt, FlipAxis axis);

struct SsdCropOptions {
  std::vector<double> min_ious{0.1, 0.3, 0.5, 0.7, 0.9};
  double min_area = 0.1;
  double max_area = 1.0;
  double min_aspect = 0.5;
  double max_aspect = 2.0;
  int max_trials = 50;
};

struct SsdCropResult {
  imaging::Image image;
  std::vector<GroundTruthRecord> gt;
  imaging::BBox patch;              // in source frame coordinates
  std::optional<double> min_iou;    // constraint that was sampled, if any
  bool whole_image = false;         // branch chose (or fell back to) the full frame
};

/// Random crop as used for SSD training. Draws one constraint uniformly from
/// {whole image, each min IoU, unconstrained}, then up to max_trials patches
/// with area fraction and aspect ratio drawn from the option ranges. A box is
/// kept iff its center lies inside the patch; a patch is accepted when it
/// keeps at least one box and every kept box reaches the sampled IoU with
/// the patch. Kept boxes are clipped and shifted into patch coordinates.
/// Falls back to the whole frame. Throws InvalidArgument when gt is empty.
SsdCropResult ssd_random_crop(const imaging::Image& frame,
                              std::span<const GroundTruthRecord> gt,
                              std::uint64_t seed, const SsdCropOptions& options = {});

struct VarianceCrop {
  imaging::Image image;
  imaging::BBox box;
};

/// Moves each side of `bbox` independently by a fraction drawn from
/// [low, high] of the matching box dimension (positive = outwards), truncated
/// toward zero, clamps to the frame and crops. Throws InvalidArgument when
/// bbox leaves the frame and InvalidCrop when nothing is left after clamping.
VarianceCrop crop_with_variance(const imaging::Image& frame, const imaging::BBox& bbox,
                                double low, double high, std::uint64_t seed);

}  // namespace swarmloc::compose
