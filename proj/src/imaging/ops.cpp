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

#include "swarmloc/imaging/ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "swarmloc/errors.hpp"

namespace swarmloc::imaging {

namespace {

std::uint8_t round_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

// cos/sin of a rotation in degrees, exact for multiples of 90.
void rotation_terms(double rotation_deg, double& c, double& s) {
  double deg = std::fmod(rotation_deg, 360.0);
  if (deg < 0) deg += 360.0;
  if (deg == 0.0) {
    c = 1.0;
    s = 0.0;
  } else if (deg == 90.0) {
    c = 0.0;
    s = 1.0;
  } else if (deg == 180.0) {
    c = -1.0;
    s = 0.0;
  } else if (deg == 270.0) {
    c = 0.0;
    s = -1.0;
  } else {
    const double rad = deg * std::numbers::pi / 180.0;
    c = std::cos(rad);
    s = std::sin(rad);
  }
}

int ceil_extent(double v) {
  return std::max(1, static_cast<int>(std::ceil(v - 1e-7)));
}

}  // namespace

void alpha_composite_inplace(Image& dst, const Image& src,
                             PixelPoint top_left) {
  if (dst.channels() != 3) throw InvalidArgument("composite target must be RGB");
  if (src.channels() != 4) throw InvalidArgument("composite source must be RGBA");
  const int x_begin = std::max(0, -top_left.x);
  const int y_begin = std::max(0, -top_left.y);
  const int x_end = std::min(src.width(), dst.width() - top_left.x);
  const int y_end = std::min(src.height(), dst.height() - top_left.y);
  for (int y = y_begin; y < y_end; ++y) {
    for (int x = x_begin; x < x_end; ++x) {
      const std::uint8_t* s = src.pixel(x, y);
      const unsigned a = s[3];
      if (a == 0) continue;
      std::uint8_t* d = dst.pixel(x + top_left.x, y + top_left.y);
      if (a == 255) {
        d[0] = s[0];
        d[1] = s[1];
        d[2] = s[2];
        continue;
      }
      for (int c = 0; c < 3; ++c) {
        d[c] = static_cast<std::uint8_t>((s[c] * a + d[c] * (255u - a) + 127u) /
                                         255u);
      }
    }
  }
}

Image alpha_composite(const Image& dst, const Image& src, PixelPoint top_left) {
  Image out = dst;
  alpha_composite_inplace(out, src, top_left);
  return out;
}

Size transformed_extent(int width, int height, double scale,
                        double rotation_deg) {
  double c = 0;
  double s = 0;
  rotation_terms(rotation_deg, c, s);
  c = std::abs(c);
  s = std::abs(s);
  return {ceil_extent(scale * (width * c + height * s)),
          ceil_extent(scale * (width * s + height * c))};
}

Image transform_rgba(const Image& src, double scale, double rotation_deg) {
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw InvalidArgument("transform scale must be positive");
  }
  if (!std::isfinite(rotation_deg)) {
    throw InvalidArgument("transform rotation must be finite");
  }
  if (src.channels() != 4) throw InvalidArgument("transform source must be RGBA");

  double c = 0;
  double s = 0;
  rotation_terms(rotation_deg, c, s);
  if (scale == 1.0 && c == 1.0) return src;

  const Size extent =
      transformed_extent(src.width(), src.height(), scale, rotation_deg);
  Image out(extent.width, extent.height, 4);

  const double sw = src.width();
  const double sh = src.height();
  // Centre on half the rounded real extent rather than half the canvas, so a
  // near-axis-aligned rotation keeps the sampling phase of the exact one. The
  // shift is at most a quarter pixel and never drops a covered pixel centre.
  const double ocx = 0.5 * std::round(scale * (sw * std::abs(c) + sh * std::abs(s)));
  const double ocy = 0.5 * std::round(scale * (sw * std::abs(s) + sh * std::abs(c)));
  const double inv = 1.0 / scale;
  const int max_x = src.width() - 1;
  const int max_y = src.height() - 1;

  for (int j = 0; j < extent.height; ++j) {
    const double dy = j + 0.5 - ocy;
    for (int i = 0; i < extent.width; ++i) {
      const double dx = i + 0.5 - ocx;
      // Inverse of x' = x cos + y sin, y' = -x sin + y cos.
      const double px = (dx * c - dy * s) * inv + 0.5 * sw;
      const double py = (dx * s + dy * c) * inv + 0.5 * sh;
      if (px < 0 || py < 0 || px >= sw || py >= sh) continue;

      const double fx = px - 0.5;
      const double fy = py - 0.5;
      const int x0 = static_cast<int>(std::floor(fx));
      const int y0 = static_cast<int>(std::floor(fy));
      const double tx = fx - x0;
      const double ty = fy - y0;
      const int xr[2] = {x0, x0 + 1};
      const int yr[2] = {y0, y0 + 1};
      const double wx[2] = {1.0 - tx, tx};
      const double wy[2] = {1.0 - ty, ty};

      // Neighbours beyond the source edge are transparent, so edges come out
      // anti-aliased; their colour is clamped for the all-transparent case.
      double alpha = 0;
      double premul[3] = {0, 0, 0};
      double plain[3] = {0, 0, 0};
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const double w = wy[a] * wx[b];
          if (w == 0) continue;
          const bool inside = src.contains(xr[b], yr[a]);
          const std::uint8_t* p =
              src.pixel(std::clamp(xr[b], 0, max_x), std::clamp(yr[a], 0, max_y));
          const double wa = inside ? w * p[3] : 0.0;
          alpha += wa;
          for (int k = 0; k < 3; ++k) {
            premul[k] += wa * p[k];
            plain[k] += w * p[k];
          }
        }
      }
      std::uint8_t* o = out.pixel(i, j);
      for (int k = 0; k < 3; ++k) {
        o[k] = round_u8(alpha > 0 ? premul[k] / alpha : plain[k]);
      }
      o[3] = round_u8(alpha);
    }
  }
  return out;
}

BBox tight_bbox(const BinaryMask& mask) {
  int x0 = mask.width();
  int y0 = mask.height();
  int x1 = -1;
  int y1 = -1;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.get(x, y)) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) throw EmptyMaskError("mask has no set pixel");
  return {x0, y0, x1 + 1, y1 + 1};
}

BBox tight_bbox(const Image& rgba) { return tight_bbox(alpha_mask(rgba)); }

BinaryMask alpha_mask(const Image& rgba) {
  if (rgba.channels() != 4) throw InvalidArgument("alpha plane requires RGBA");
  BinaryMask mask(rgba.width(), rgba.height());
  for (int y = 0; y < rgba.height(); ++y) {
    for (int x = 0; x < rgba.width(); ++x) {
      if (rgba.pixel(x, y)[3] > 0) mask.set(x, y);
    }
  }
  return mask;
}

Image crop(const Image& image, const BBox& box) {
  if (box.x_min() < 0 || box.y_min() < 0 || box.x_max() > image.width() ||
      box.y_max() > image.height()) {
    throw InvalidArgument("crop box exceeds image bounds");
  }
  Image out(box.width(), box.height(), image.channels());
  const std::size_t row = static_cast<std::size_t>(box.width()) *
                          static_cast<std::size_t>(image.channels());
  for (int y = 0; y < box.height(); ++y) {
    std::copy_n(image.pixel(box.x_min(), box.y_min() + y), row, out.pixel(0, y));
  }
  return out;
}

BinaryMask crop(const BinaryMask& mask, const BBox& box) {
  if (box.x_min() < 0 || box.y_min() < 0 || box.x_max() > mask.width() ||
      box.y_max() > mask.height()) {
    throw InvalidArgument("crop box exceeds mask bounds");
  }
  BinaryMask out(box.width(), box.height());
  for (int y = 0; y < box.height(); ++y) {
    for (int x = 0; x < box.width(); ++x) {
      out.set(x, y, mask.get(box.x_min() + x, box.y_min() + y));
    }
  }
  return out;
}

std::optional<BBox> clip_to(const BBox& box, int width, int height) {
  return intersection(box, BBox(0, 0, width, height));
}

Image flip_horizontal(const Image& image) {
  Image out(image.width(), image.height(), image.channels());
  const int ch = image.channels();
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      std::copy_n(image.pixel(x, y), ch, out.pixel(image.width() - 1 - x, y));
    }
  }
  return out;
}

Image flip_vertical(const Image& image) {
  Image out(image.width(), image.height(), image.channels());
  const std::size_t row = static_cast<std::size_t>(image.width()) *
                          static_cast<std::size_t>(image.channels());
  for (int y = 0; y < image.height(); ++y) {
    std::copy_n(image.pixel(0, y), row, out.pixel(0, image.height() - 1 - y));
  }
  return out;
}

Image to_rgb(const Image& image) {
  if (image.channels() == 3) return image;
  Image out(image.width(), image.height(), 3);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      std::copy_n(image.pixel(x, y), 3, out.pixel(x, y));
    }
  }
  return out;
}

Image to_rgba(const Image& image) {
  if (image.channels() == 4) return image;
  Image out(image.width(), image.height(), 4);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      std::copy_n(image.pixel(x, y), 3, out.pixel(x, y));
      out.pixel(x, y)[3] = 255;
    }
  }
  return out;
}

Image with_alpha(const Image& rgb, const BinaryMask& mask) {
  if (rgb.width() != mask.width() || rgb.height() != mask.height()) {
    throw InvalidArgument("mask and image dimensions differ");
  }
  Image out = to_rgba(rgb);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      out.pixel(x, y)[3] = mask.get(x, y) ? 255 : 0;
    }
  }
  return out;
}

Image pad_to_square_replicate(const Image& image) {
  const int side = std::max(image.width(), image.height());
  if (side == image.width() && side == image.height()) return image;
  const int ox = (side - image.width()) / 2;
  const int oy = (side - image.height()) / 2;
  Image out(side, side, image.channels());
  for (int y = 0; y < side; ++y) {
    const int sy = std::clamp(y - oy, 0, image.height() - 1);
    for (int x = 0; x < side; ++x) {
      const int sx = std::clamp(x - ox, 0, image.width() - 1);
      std::copy_n(image.pixel(sx, sy), image.channels(), out.pixel(x, y));
    }
  }
  return out;
}

namespace {

struct Tap {
  int index;
  double weight;
};

// Coverage weights of source cells under each target cell along one axis.
std::vector<std::vector<Tap>> area_taps(int src, int dst) {
  std::vector<std::vector<Tap>> taps(static_cast<std::size_t>(dst));
  const double ratio = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    const double begin = i * ratio;
    const double end = (i + 1) * ratio;
    auto& row = taps[static_cast<std::size_t>(i)];
    const int first = static_cast<int>(std::floor(begin));
    const int last = std::min(src - 1, static_cast<int>(std::ceil(end)) - 1);
    for (int k = first; k <= last; ++k) {
      const double overlap = std::min<double>(end, k + 1) - std::max<double>(begin, k);
      if (overlap > 1e-12) row.push_back({k, overlap / ratio});
    }
  }
  return taps;
}

}  // namespace

Image resize_area(const Image& image, Size target) {
  if (target.width < 1 || target.height < 1) {
    throw InvalidArgument("resize target must be at least 1x1");
  }
  if (target.width == image.width() && target.height == image.height()) {
    return image;
  }
  const auto xt = area_taps(image.width(), target.width);
  const auto yt = area_taps(image.height(), target.height);
  const int ch = image.channels();
  Image out(target.width, target.height, ch);
  std::vector<double> acc(static_cast<std::size_t>(ch));
  for (int y = 0; y < target.height; ++y) {
    for (int x = 0; x < target.width; ++x) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (const Tap& ty : yt[static_cast<std::size_t>(y)]) {
        for (const Tap& tx : xt[static_cast<std::size_t>(x)]) {
          const double w = ty.weight * tx.weight;
          const std::uint8_t* p = image.pixel(tx.index, ty.index);
          for (int c = 0; c < ch; ++c) acc[static_cast<std::size_t>(c)] += w * p[c];
        }
      }
      std::uint8_t* o = out.pixel(x, y);
      for (int c = 0; c < ch; ++c) o[c] = round_u8(acc[static_cast<std::size_t>(c)]);
    }
  }
  return out;
}

Image resize_bilinear(const Image& image, Size target) {
  if (target.width < 1 || target.height < 1) {
    throw InvalidArgument("resize target must be at least 1x1");
  }
  if (target.width == image.width() && target.height == image.height()) {
    return image;
  }
  const int ch = image.channels();
  Image out(target.width, target.height, ch);
  const double sx = static_cast<double>(image.width()) / target.width;
  const double sy = static_cast<double>(image.height()) / target.height;
  for (int y = 0; y < target.height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, image.height() - 1.0);
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, image.height() - 1);
    const double ty = fy - y0;
    for (int x = 0; x < target.width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, image.width() - 1.0);
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, image.width() - 1);
      const double tx = fx - x0;
      const std::uint8_t* p00 = image.pixel(x0, y0);
      const std::uint8_t* p01 = image.pixel(x1, y0);
      const std::uint8_t* p10 = image.pixel(x0, y1);
      const std::uint8_t* p11 = image.pixel(x1, y1);
      std::uint8_t* o = out.pixel(x, y);
      for (int c = 0; c < ch; ++c) {
        const double top = p00[c] * (1 - tx) + p01[c] * tx;
        const double bottom = p10[c] * (1 - tx) + p11[c] * tx;
        o[c] = round_u8(top * (1 - ty) + bottom * ty);
      }
    }
  }
  return out;
}

Image resize(const Image& image, Size target) {
  if (target.width <= image.width() && target.height <= image.height()) {
    return resize_area(image, target);
  }
  return resize_bilinear(image, target);
}

}  // namespace swarmloc::imaging
