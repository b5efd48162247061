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
#include <vector>

#include "swarmloc/imaging/image.hpp"

namespace swarmloc::crops {

using imaging::BBox;
using imaging::BinaryMask;
using imaging::Image;

/// Pixel is set iff max over channels of |frame - background| > threshold.
/// Throws InvalidArgument on dimension mismatch or threshold outside 0..255.
BinaryMask background_subtract_mask(const Image& frame, const Image& background,
                                    int threshold);

/// Binary erosion/dilation with a disc of the given radius (offsets with
/// dx^2 + dy^2 <= r^2). Outside the mask counts as set for erosion and unset
/// for dilation, so the frame border never erodes a touching object.
BinaryMask erode(const BinaryMask& mask, int radius);
BinaryMask dilate(const BinaryMask& mask, int radius);

/// Opening with `open_radius` followed by closing with `close_radius`. Erosion
/// treats the outside as set; closing treats it as background.
BinaryMask refine_mask(const BinaryMask& mask, int open_radius, int close_radius);

struct Component {
  int label = 0;
  std::size_t area = 0;
  BBox bbox;
  /// First pixel in raster order.
  imaging::PixelPoint seed;
  /// Raw second-order statistics for shape descriptors.
  double sum_x = 0, sum_y = 0, sum_xx = 0, sum_yy = 0, sum_xy = 0;

  /// sqrt(major / minor) eigenvalue ratio of the pixel covariance; 1 for
  /// isotropic blobs, rotation invariant.
  double elongation() const;
};

struct Labeling {
  int width = 0;
  int height = 0;
  /// 0 = background, otherwise 1-based component label.
  std::vector<std::int32_t> labels;
  /// Ordered by label, i.e. by first pixel in raster order.
  std::vector<Component> components;

  std::int32_t at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
};

/// 8-connected component labeling.
Labeling label_components(const BinaryMask& mask);

/// Mask of the largest 8-connected component. Ties go to the component whose
/// first raster-order pixel comes first. Throws EmptyMaskError on an empty mask.
BinaryMask largest_component(const BinaryMask& mask);

}  // namespace swarmloc::crops
