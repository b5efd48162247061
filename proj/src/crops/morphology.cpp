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

#include "swarmloc/crops/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "swarmloc/errors.hpp"

namespace swarmloc::crops {

BinaryMask background_subtract_mask(const Image& frame, const Image& background,
                                    int threshold) {
  if (frame.width() != background.width() ||
      frame.height() != background.height()) {
    throw InvalidArgument("frame is " + std::to_string(frame.width()) + "x" +
                          std::to_string(frame.height()) + " but background is " +
                          std::to_string(background.width()) + "x" +
                          std::to_string(background.height()));
  }
  if (threshold < 0 || threshold > 255) {
    throw InvalidArgument("threshold must lie in 0..255");
  }
  BinaryMask mask(frame.width(), frame.height());
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      const std::uint8_t* f = frame.pixel(x, y);
      const std::uint8_t* b = background.pixel(x, y);
      int diff = 0;
      for (int c = 0; c < 3; ++c) diff = std::max(diff, std::abs(f[c] - b[c]));
      if (diff > threshold) mask.set(x, y);
    }
  }
  return mask;
}

namespace {

// Half-widths of the disc rows, indexed by dy + radius.
std::vector<int> disc_rows(int radius) {
  std::vector<int> rows;
  for (int dy = -radius; dy <= radius; ++dy) {
    rows.push_back(static_cast<int>(
        std::floor(std::sqrt(static_cast<double>(radius * radius - dy * dy)))));
  }
  return rows;
}

// Row-wise prefix counts of set pixels, (width + 1) entries per row.
std::vector<int> row_prefix(const BinaryMask& mask) {
  const int w = mask.width();
  std::vector<int> prefix(static_cast<std::size_t>(mask.height()) *
                          static_cast<std::size_t>(w + 1));
  for (int y = 0; y < mask.height(); ++y) {
    int* row = prefix.data() + static_cast<std::size_t>(y) * (w + 1);
    row[0] = 0;
    for (int x = 0; x < w; ++x) row[x + 1] = row[x] + (mask.get(x, y) ? 1 : 0);
  }
  return prefix;
}

template <bool kErode>
BinaryMask morph(const BinaryMask& mask, int radius) {
  if (radius < 0) throw InvalidArgument("morphology radius must be >= 0");
  if (radius == 0) return mask;
  const int w = mask.width();
  const int h = mask.height();
  const auto rows = disc_rows(radius);
  const auto prefix = row_prefix(mask);
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool result = kErode;
      for (int dy = -radius; dy <= radius && result == kErode; ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= h) continue;
        const int hw = rows[static_cast<std::size_t>(dy + radius)];
        const int x0 = std::max(0, x - hw);
        const int x1 = std::min(w, x + hw + 1);
        const int* row = prefix.data() + static_cast<std::size_t>(yy) * (w + 1);
        const int set = row[x1] - row[x0];
        if constexpr (kErode) {
          if (set != x1 - x0) result = false;
        } else {
          if (set > 0) result = true;
        }
      }
      if (result) out.set(x, y);
    }
  }
  return out;
}

}  // namespace

BinaryMask erode(const BinaryMask& mask, int radius) {
  return morph<true>(mask, radius);
}

BinaryMask dilate(const BinaryMask& mask, int radius) {
  return morph<false>(mask, radius);
}

BinaryMask refine_mask(const BinaryMask& mask, int open_radius,
                       int close_radius) {
  if (open_radius < 0 || close_radius < 0) {
    throw InvalidArgument("morphology radii must be >= 0");
  }
  const BinaryMask opened = dilate(erode(mask, open_radius), open_radius);
  if (close_radius == 0) return opened;
  // Close on a background-padded canvas; erosion alone treats the outside as
  // set, which would let a shape grow into the last rows near the border.
  const int r = close_radius;
  BinaryMask padded(mask.width() + 2 * r, mask.height() + 2 * r);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (opened.get(x, y)) padded.set(x + r, y + r);
    }
  }
  const BinaryMask closed = erode(dilate(padded, r), r);
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (closed.get(x + r, y + r)) out.set(x, y);
    }
  }
  return out;
}

double Component::elongation() const {
  if (area == 0) return 1.0;
  const double n = static_cast<double>(area);
  const double mx = sum_x / n;
  const double my = sum_y / n;
  // Unit-square pixel variance (1/12) keeps single rows/columns finite.
  const double cxx = sum_xx / n - mx * mx + 1.0 / 12.0;
  const double cyy = sum_yy / n - my * my + 1.0 / 12.0;
  const double cxy = sum_xy / n - mx * my;
  const double tr = cxx + cyy;
  const double disc = std::sqrt(std::max(0.0, 0.25 * (cxx - cyy) * (cxx - cyy) + cxy * cxy));
  const double major = 0.5 * tr + disc;
  const double minor = std::max(0.5 * tr - disc, 1e-12);
  return std::sqrt(major / minor);
}

Labeling label_components(const BinaryMask& mask) {
  Labeling out;
  out.width = mask.width();
  out.height = mask.height();
  out.labels.assign(static_cast<std::size_t>(out.width) *
                        static_cast<std::size_t>(out.height),
                    0);
  std::vector<imaging::PixelPoint> stack;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.get(x, y) || out.at(x, y) != 0) continue;
      const auto label = static_cast<std::int32_t>(out.components.size() + 1);
      Component comp;
      comp.label = label;
      comp.seed = {x, y};
      int x0 = x, y0 = y, x1 = x, y1 = y;
      stack.clear();
      stack.push_back({x, y});
      out.labels[static_cast<std::size_t>(y) * out.width + x] = label;
      while (!stack.empty()) {
        const auto p = stack.back();
        stack.pop_back();
        ++comp.area;
        comp.sum_x += p.x;
        comp.sum_y += p.y;
        comp.sum_xx += static_cast<double>(p.x) * p.x;
        comp.sum_yy += static_cast<double>(p.y) * p.y;
        comp.sum_xy += static_cast<double>(p.x) * p.y;
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = p.x + dx;
            const int ny = p.y + dy;
            if (!mask.contains(nx, ny) || !mask.get(nx, ny)) continue;
            auto& slot = out.labels[static_cast<std::size_t>(ny) * out.width + nx];
            if (slot != 0) continue;
            slot = label;
            stack.push_back({nx, ny});
          }
        }
      }
      comp.bbox = BBox(x0, y0, x1 + 1, y1 + 1);
      out.components.push_back(comp);
    }
  }
  return out;
}

BinaryMask largest_component(const BinaryMask& mask) {
  const Labeling lab = label_components(mask);
  if (lab.components.empty()) throw EmptyMaskError("mask has no set pixel");
  // Strict comparison keeps the earliest (raster-order) component on ties.
  const Component* best = &lab.components.front();
  for (const auto& c : lab.components) {
    if (c.area > best->area) best = &c;
  }
  BinaryMask out(mask.width(), mask.height());
  for (int y = best->bbox.y_min(); y < best->bbox.y_max(); ++y) {
    for (int x = best->bbox.x_min(); x < best->bbox.x_max(); ++x) {
      if (lab.at(x, y) == best->label) out.set(x, y);
    }
  }
  return out;
}

}  // namespace swarmloc::crops
