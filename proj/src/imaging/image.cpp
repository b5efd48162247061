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

#include "swarmloc/imaging/image.hpp"

#include <algorithm>
#include <string>

#include "swarmloc/errors.hpp"

namespace swarmloc::imaging {

namespace {

void check_dims(int width, int height, int channels) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("image dimensions must be positive, got " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
  if (channels != 3 && channels != 4) {
    throw InvalidArgument("image must have 3 or 4 channels, got " +
                          std::to_string(channels));
  }
}

std::size_t byte_count(int width, int height, int channels) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
         static_cast<std::size_t>(channels);
}

}  // namespace

Image::Image(int width, int height, int channels)
    : width_(width), height_(height), channels_(channels) {
  check_dims(width, height, channels);
  data_.assign(byte_count(width, height, channels), 0);
}

Image::Image(int width, int height, int channels,
             std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels),
      data_(std::move(data)) {
  check_dims(width, height, channels);
  if (data_.size() != byte_count(width, height, channels)) {
    throw InvalidArgument("pixel buffer holds " + std::to_string(data_.size()) +
                          " bytes, expected " +
                          std::to_string(byte_count(width, height, channels)));
  }
}

Image Image::filled(int width, int height, int channels,
                    std::span<const std::uint8_t> value) {
  if (value.size() != static_cast<std::size_t>(channels)) {
    throw InvalidArgument("fill value must have one entry per channel");
  }
  Image img(width, height, channels);
  auto bytes = img.data();
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = value[i % value.size()];
  }
  return img;
}

BinaryMask::BinaryMask(int width, int height, bool value)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("mask dimensions must be positive");
  }
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
               value ? 1 : 0);
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

bool BinaryMask::any() const noexcept {
  return std::find(bits_.begin(), bits_.end(), 1) != bits_.end();
}

BBox::BBox(int x_min, int y_min, int x_max, int y_max)
    : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {
  if (x_min >= x_max || y_min >= y_max) {
    throw InvalidArgument("degenerate bbox [" + std::to_string(x_min) + "," +
                          std::to_string(y_min) + "," + std::to_string(x_max) +
                          "," + std::to_string(y_max) + ")");
  }
}

std::optional<BBox> intersection(const BBox& a, const BBox& b) {
  const int x0 = std::max(a.x_min(), b.x_min());
  const int y0 = std::max(a.y_min(), b.y_min());
  const int x1 = std::min(a.x_max(), b.x_max());
  const int y1 = std::min(a.y_max(), b.y_max());
  if (x0 >= x1 || y0 >= y1) return std::nullopt;
  return BBox(x0, y0, x1, y1);
}

double iou(const BBox& a, const BBox& b) {
  const auto inter = intersection(a, b);
  if (!inter) return 0.0;
  const auto i = static_cast<double>(inter->area());
  return i / (static_cast<double>(a.area()) + static_cast<double>(b.area()) - i);
}

}  // namespace swarmloc::imaging
