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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace swarmloc::imaging {

/// 8-bit interleaved image, row-major, origin top-left, x right, y down.
/// Channels are 3 (RGB) or 4 (RGBA).
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels);
  Image(int width, int height, int channels, std::vector<std::uint8_t> data);

  static Image filled(int width, int height, int channels,
                      std::span<const std::uint8_t> value);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return data_.empty(); }
  bool has_alpha() const noexcept { return channels_ == 4; }

  std::uint8_t* pixel(int x, int y) noexcept {
    return data_.data() + offset(x, y);
  }
  const std::uint8_t* pixel(int x, int y) const noexcept {
    return data_.data() + offset(x, y);
  }
  std::uint8_t at(int x, int y, int c) const noexcept {
    return data_[offset(x, y) + static_cast<std::size_t>(c)];
  }
  std::uint8_t& at(int x, int y, int c) noexcept {
    return data_[offset(x, y) + static_cast<std::size_t>(c)];
  }

  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
           static_cast<std::size_t>(channels_);
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> data_;
};

/// One boolean per pixel, stored as 0/1 bytes.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool value = false);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool get(int x, int y) const noexcept { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool v = true) noexcept {
    bits_[index(x, y)] = v ? 1 : 0;
  }
  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::size_t count() const noexcept;
  bool any() const noexcept;

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct PixelPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

struct Size {
  int width = 0;
  int height = 0;
  friend bool operator==(const Size&, const Size&) = default;
};

/// Half-open pixel box [x_min, x_max) x [y_min, y_max) with positive area.
class BBox {
 public:
  BBox() = default;
  /// Throws InvalidArgument unless x_min < x_max and y_min < y_max.
  BBox(int x_min, int y_min, int x_max, int y_max);

  int x_min() const noexcept { return x_min_; }
  int y_min() const noexcept { return y_min_; }
  int x_max() const noexcept { return x_max_; }
  int y_max() const noexcept { return y_max_; }
  int width() const noexcept { return x_max_ - x_min_; }
  int height() const noexcept { return y_max_ - y_min_; }
  long long area() const noexcept {
    return static_cast<long long>(width()) * height();
  }
  double center_x() const noexcept { return 0.5 * (x_min_ + x_max_); }
  double center_y() const noexcept { return 0.5 * (y_min_ + y_max_); }

  BBox translated(int dx, int dy) const {
    return {x_min_ + dx, y_min_ + dy, x_max_ + dx, y_max_ + dy};
  }

  friend bool operator==(const BBox&, const BBox&) = default;

 private:
  int x_min_ = 0;
  int y_min_ = 0;
  int x_max_ = 1;
  int y_max_ = 1;
};

/// Intersection of two boxes, nullopt when they do not overlap.
std::optional<BBox> intersection(const BBox& a, const BBox& b);

/// Intersection over union of the covered pixel areas, in [0, 1].
double iou(const BBox& a, const BBox& b);

}  // namespace swarmloc::imaging
