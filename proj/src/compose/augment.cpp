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

#include "swarmloc/compose/augment.hpp"

#include <algorithm>
#include <cmath>

#include "swarmloc/angles.hpp"
#include "swarmloc/compose/rng.hpp"
#include "swarmloc/errors.hpp"
#include "swarmloc/imaging/ops.hpp"

namespace swarmloc::compose {

using imaging::BBox;
using imaging::Image;

double flip_orientation(double orientation, FlipAxis axis) {
  return axis == FlipAxis::kHorizontal ? quantize_degrees(180.0 - orientation)
                                       : quantize_degrees(360.0 - orientation);
}

AugmentedFrame flip_augment(const Image& frame, std::span<const GroundTruthRecord> gt,
                            FlipAxis axis) {
  AugmentedFrame out;
  const int w = frame.width();
  const int h = frame.height();
  out.image = axis == FlipAxis::kHorizontal ? imaging::flip_horizontal(frame)
                                            : imaging::flip_vertical(frame);
  out.gt.assign(gt.begin(), gt.end());
  for (auto& r : out.gt) {
    const BBox& b = r.bbox;
    r.bbox = axis == FlipAxis::kHorizontal
                 ? BBox(w - b.x_max(), b.y_min(), w - b.x_min(), b.y_max())
                 : BBox(b.x_min(), h - b.y_max(), b.x_max(), h - b.y_min());
    r.orientation = flip_orientation(r.orientation, axis);
  }
  return out;
}

namespace {

bool center_inside(const BBox& box, const BBox& patch) {
  const double cx = box.center_x();
  const double cy = box.center_y();
  return cx >= patch.x_min() && cx < patch.x_max() && cy >= patch.y_min() &&
         cy < patch.y_max();
}

SsdCropResult whole_frame(const Image& frame, std::span<const GroundTruthRecord> gt,
                          std::optional<double> min_iou) {
  return {frame, {gt.begin(), gt.end()}, BBox(0, 0, frame.width(), frame.height()),
          min_iou, true};
}

}  // namespace

SsdCropResult ssd_random_crop(const Image& frame, std::span<const GroundTruthRecord> gt,
                              std::uint64_t seed, const SsdCropOptions& options) {
  if (gt.empty()) throw InvalidArgument("ssd_random_crop needs at least one box");
  Rng rng(seed);
  // 0: whole image, 1..n: min IoU, n+1: unconstrained.
  const auto n = static_cast<std::int64_t>(options.min_ious.size());
  const auto branch = rng.uniform_int(0, n + 1);
  if (branch == 0) return whole_frame(frame, gt, std::nullopt);
  std::optional<double> min_iou;
  if (branch <= n) min_iou = options.min_ious[static_cast<std::size_t>(branch - 1)];

  const int fw = frame.width();
  const int fh = frame.height();
  for (int trial = 0; trial < options.max_trials; ++trial) {
    const double area = rng.uniform(options.min_area, options.max_area);
    const double aspect = rng.uniform(options.min_aspect, options.max_aspect);
    const int w = static_cast<int>(std::lround(fw * std::sqrt(area * aspect)));
    const int h = static_cast<int>(std::lround(fh * std::sqrt(area / aspect)));
    if (w < 1 || h < 1 || w > fw || h > fh) continue;
    const int x = static_cast<int>(rng.uniform_int(0, fw - w));
    const int y = static_cast<int>(rng.uniform_int(0, fh - h));
    const BBox patch(x, y, x + w, y + h);

    std::vector<GroundTruthRecord> kept;
    bool ok = true;
    for (const auto& r : gt) {
      if (!center_inside(r.bbox, patch)) continue;
      if (min_iou && imaging::iou(r.bbox, patch) < *min_iou) {
        ok = false;
        break;
      }
      kept.push_back(r);
    }
    if (!ok || kept.empty()) continue;
    for (auto& r : kept) {
      r.bbox = imaging::intersection(r.bbox, patch)->translated(-x, -y);
    }
    return {imaging::crop(frame, patch), std::move(kept), patch, min_iou, false};
  }
  return whole_frame(frame, gt, min_iou);
}

VarianceCrop crop_with_variance(const Image& frame, const BBox& bbox, double low,
                                double high, std::uint64_t seed) {
  if (bbox.x_min() < 0 || bbox.y_min() < 0 || bbox.x_max() > frame.width() ||
      bbox.y_max() > frame.height()) {
    throw InvalidArgument("bbox lies outside the frame");
  }
  if (high < low) throw InvalidArgument("variance bounds must satisfy low <= high");
  Rng rng(seed);
  // Truncation toward zero keeps every side inside its continuous bound.
  auto shift = [&](int extent) {
    const double f = low == high ? low : rng.uniform(low, high);
    const double d = f * extent;
    return static_cast<int>(d >= 0 ? std::floor(d + 1e-9) : std::ceil(d - 1e-9));
  };
  const int w = bbox.width();
  const int h = bbox.height();
  const int left = shift(w);
  const int right = shift(w);
  const int top = shift(h);
  const int bottom = shift(h);
  const int x0 = std::max(0, bbox.x_min() - left);
  const int y0 = std::max(0, bbox.y_min() - top);
  const int x1 = std::min(frame.width(), bbox.x_max() + right);
  const int y1 = std::min(frame.height(), bbox.y_max() + bottom);
  if (x0 >= x1 || y0 >= y1) throw InvalidCrop("variance crop collapsed to zero area");
  const BBox box(x0, y0, x1, y1);
  return {imaging::crop(frame, box), box};
}

}  // namespace swarmloc::compose
