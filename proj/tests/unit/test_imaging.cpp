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

#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "swarmloc/compose/rng.hpp"
#include "swarmloc/errors.hpp"
#include "swarmloc/imaging/io.hpp"
#include "swarmloc/imaging/ops.hpp"

namespace swarmloc::imaging {
namespace {

Image random_rgba(int w, int h, std::uint64_t seed, bool random_alpha) {
  compose::Rng rng(seed);
  Image img(w, h, 4);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  if (!random_alpha) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) img.at(x, y, 3) = 255;
    }
  }
  return img;
}

Image random_rgb(int w, int h, std::uint64_t seed) {
  compose::Rng rng(seed);
  Image img(w, h, 3);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  return img;
}

TEST(AlphaComposite, ZeroAlphaLeavesDestination) {
  const Image dst = random_rgb(20, 15, 1);
  Image src = random_rgba(8, 8, 2, false);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) src.at(x, y, 3) = 0;
  }
  EXPECT_EQ(alpha_composite(dst, src, {3, 4}), dst);
}

TEST(AlphaComposite, OpaqueOverwritesSourceExtent) {
  const Image dst = random_rgb(20, 15, 3);
  const Image src = random_rgba(6, 5, 4, false);
  const Image out = alpha_composite(dst, src, {0, 0});
  for (int y = 0; y < 15; ++y) {
    for (int x = 0; x < 20; ++x) {
      for (int c = 0; c < 3; ++c) {
        const int want = (x < 6 && y < 5) ? src.at(x, y, c) : dst.at(x, y, c);
        ASSERT_EQ(out.at(x, y, c), want);
      }
    }
  }
}

TEST(AlphaComposite, HalfAlphaBlend) {
  const std::uint8_t grey[] = {100, 100, 100};
  const std::uint8_t light[] = {200, 200, 200, 128};
  const Image out = alpha_composite(Image::filled(1, 1, 3, grey), Image::filled(1, 1, 4, light),
                                    {0, 0});
  for (int c = 0; c < 3; ++c) EXPECT_NEAR(out.at(0, 0, c), 150, 1);
}

TEST(AlphaComposite, OffCanvasPixelsAreDiscarded) {
  const Image dst = random_rgb(10, 10, 5);
  const Image src = random_rgba(6, 6, 6, false);
  const Image out = alpha_composite(dst, src, {-3, 7});
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      const bool covered = x < 3 && y >= 7;
      for (int c = 0; c < 3; ++c) {
        ASSERT_EQ(out.at(x, y, c), covered ? src.at(x + 3, y - 7, c) : dst.at(x, y, c));
      }
    }
  }
}

TEST(AlphaComposite, ZeroAlphaIdentityProperty) {
  compose::Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int dw = static_cast<int>(rng.uniform_int(1, 30));
    const int dh = static_cast<int>(rng.uniform_int(1, 30));
    const int sw = static_cast<int>(rng.uniform_int(1, 30));
    const int sh = static_cast<int>(rng.uniform_int(1, 30));
    const Image dst = random_rgb(dw, dh, rng.next());
    Image src = random_rgba(sw, sh, rng.next(), false);
    for (int y = 0; y < sh; ++y) {
      for (int x = 0; x < sw; ++x) src.at(x, y, 3) = 0;
    }
    const PixelPoint at{static_cast<int>(rng.uniform_int(-40, 40)),
                        static_cast<int>(rng.uniform_int(-40, 40))};
    ASSERT_EQ(alpha_composite(dst, src, at), dst);
  }
}

TEST(Transform, IdentityIsByteCopy) {
  const Image src = random_rgba(17, 9, 7, true);
  EXPECT_EQ(transform_rgba(src, 1.0, 0.0), src);
}

TEST(Transform, QuarterTurnSwapsDimensions) {
  const Image src = random_rgba(30, 12, 8, false);
  const Image out = transform_rgba(src, 1.0, 90.0);
  EXPECT_EQ(out.width(), 12);
  EXPECT_EQ(out.height(), 30);
}

TEST(Transform, QuarterTurnIsCounterclockwise) {
  // marker in the right half ends up in the top half
  Image src(20, 10, 4);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 20; ++x) {
      std::uint8_t* p = src.pixel(x, y);
      p[0] = x >= 10 ? 255 : 0;
      p[3] = 255;
    }
  }
  const Image out = transform_rgba(src, 1.0, 90.0);
  EXPECT_EQ(out.at(5, 2, 0), 255);
  EXPECT_EQ(out.at(5, 17, 0), 0);
}

TEST(Transform, FortyFiveDegreeCanvas) {
  const Image out = transform_rgba(random_rgba(100, 100, 9, false), 1.0, 45.0);
  EXPECT_EQ(out.width(), 142);
  EXPECT_EQ(out.height(), 142);
  EXPECT_EQ(transformed_extent(100, 100, 1.0, 45.0), (Size{142, 142}));
}

TEST(Transform, NonPositiveScaleRejected) {
  const Image src = random_rgba(4, 4, 10, false);
  EXPECT_THROW(transform_rgba(src, 0.0, 0.0), InvalidArgument);
  EXPECT_THROW(transform_rgba(src, -1.0, 10.0), InvalidArgument);
}

TEST(Transform, CornersOutsideSourceAreTransparent) {
  const Image out = transform_rgba(random_rgba(40, 40, 11, false), 1.0, 45.0);
  EXPECT_EQ(out.at(0, 0, 3), 0);
  EXPECT_EQ(out.at(out.width() - 1, out.height() - 1, 3), 0);
  EXPECT_EQ(out.at(out.width() / 2, out.height() / 2, 3), 255);
}

// Smooth content, so bilinear resampling error stays small.
Image smooth_rgba(int w, int h) {
  Image img(w, h, 4);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint8_t* p = img.pixel(x, y);
      p[0] = static_cast<std::uint8_t>(128 + 100 * std::sin(x * 0.15));
      p[1] = static_cast<std::uint8_t>(128 + 100 * std::cos(y * 0.12));
      p[2] = static_cast<std::uint8_t>((x * 3 + y * 2) % 256 / 2 + 60);
      p[3] = 255;
    }
  }
  return img;
}

TEST(Transform, RotateBackRecoversImage) {
  const Image src = smooth_rgba(60, 40);
  for (const double angle : {13.0, 37.5, 90.0, 145.0, 233.3, 301.0}) {
    const Image there = transform_rgba(src, 1.0, angle);
    const Image back = transform_rgba(there, 1.0, -angle);
    // Content centres sit at half the rounded real extent, which may be half
    // a pixel off the canvas centre; track where source pixels land.
    const double t = angle * M_PI / 180.0;
    const double c = std::cos(t), s = std::sin(t);
    const auto half_extent = [&](double w, double h) {
      return std::pair{0.5 * std::round(w * std::abs(c) + h * std::abs(s)),
                       0.5 * std::round(w * std::abs(s) + h * std::abs(c))};
    };
    const auto [o1x, o1y] = half_extent(src.width(), src.height());
    const auto [o2x, o2y] = half_extent(there.width(), there.height());
    const double ux = o1x - 0.5 * there.width();
    const double uy = o1y - 0.5 * there.height();
    const double shift_x = o2x - 0.5 * src.width() + c * ux - s * uy;
    const double shift_y = o2y - 0.5 * src.height() + s * ux + c * uy;

    double err = 0;
    long n = 0;
    for (int y = 0; y < src.height(); ++y) {
      for (int x = 0; x < src.width(); ++x) {
        const double fx = x + shift_x;
        const double fy = y + shift_y;
        const int x0 = static_cast<int>(std::floor(fx));
        const int y0 = static_cast<int>(std::floor(fy));
        if (!back.contains(x0, y0) || !back.contains(x0 + 1, y0 + 1)) continue;
        bool opaque = true;
        for (int k = 0; k < 4; ++k) opaque = opaque && back.at(x0 + k % 2, y0 + k / 2, 3) == 255;
        if (!opaque) continue;
        const double wx = fx - x0, wy = fy - y0;
        for (int ch = 0; ch < 3; ++ch) {
          const double top = back.at(x0, y0, ch) * (1 - wx) + back.at(x0 + 1, y0, ch) * wx;
          const double bottom =
              back.at(x0, y0 + 1, ch) * (1 - wx) + back.at(x0 + 1, y0 + 1, ch) * wx;
          err += std::abs(top * (1 - wy) + bottom * wy - src.at(x, y, ch));
          n += 1;
        }
      }
    }
    ASSERT_GT(n, 3000);
    EXPECT_LE(err / static_cast<double>(n), 2.0) << "angle " << angle;
  }
}

TEST(Transform, ScaledTightBoxWithinOnePixel) {
  compose::Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int w = static_cast<int>(rng.uniform_int(5, 80));
    const int h = static_cast<int>(rng.uniform_int(5, 80));
    const double s = rng.uniform(0.3, 2.5);
    const BBox box = tight_bbox(transform_rgba(random_rgba(w, h, rng.next(), false), s, 0.0));
    ASSERT_LE(std::abs(box.width() - std::lround(s * w)), 1) << w << " " << s;
    ASSERT_LE(std::abs(box.height() - std::lround(s * h)), 1) << h << " " << s;
  }
}

TEST(TightBBox, SinglePixel) {
  BinaryMask m(10, 10);
  m.set(3, 5);
  EXPECT_EQ(tight_bbox(m), BBox(3, 5, 4, 6));
}

TEST(TightBBox, FullMask) { EXPECT_EQ(tight_bbox(BinaryMask(10, 10, true)), BBox(0, 0, 10, 10)); }

TEST(TightBBox, TwoPixels) {
  BinaryMask m(10, 10);
  m.set(2, 2);
  m.set(7, 4);
  EXPECT_EQ(tight_bbox(m), BBox(2, 2, 8, 5));
}

TEST(TightBBox, EmptyMaskThrows) { EXPECT_THROW(tight_bbox(BinaryMask(4, 4)), EmptyMaskError); }

TEST(TightBBox, MatchesBruteForce) {
  compose::Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int w = static_cast<int>(rng.uniform_int(1, 25));
    const int h = static_cast<int>(rng.uniform_int(1, 25));
    BinaryMask m(w, h);
    int x0 = w, y0 = h, x1 = -1, y1 = -1;
    const double p = rng.uniform(0.01, 0.3);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (!rng.bernoulli(p)) continue;
        m.set(x, y);
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
      }
    }
    if (x1 < 0) {
      EXPECT_THROW(tight_bbox(m), EmptyMaskError);
    } else {
      ASSERT_EQ(tight_bbox(m), BBox(x0, y0, x1 + 1, y1 + 1));
    }
  }
}

TEST(TightBBox, CompositeThenCropClosure) {
  compose::Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const Image sprite = testing::random_sprite(rng.next());
    const int W = 60, H = 50;
    const PixelPoint at{static_cast<int>(rng.uniform_int(-30, 70)),
                        static_cast<int>(rng.uniform_int(-30, 60))};
    // alpha plane of the paste, placed on an empty canvas
    BinaryMask canvas(W, H);
    for (int y = 0; y < sprite.height(); ++y) {
      for (int x = 0; x < sprite.width(); ++x) {
        if (sprite.at(x, y, 3) > 0 && canvas.contains(x + at.x, y + at.y)) {
          canvas.set(x + at.x, y + at.y);
        }
      }
    }
    if (!canvas.any()) continue;
    const BBox own = tight_bbox(sprite).translated(at.x, at.y);
    const auto clipped = clip_to(own, W, H);
    ASSERT_TRUE(clipped.has_value());
    const BBox got = tight_bbox(canvas);
    if (*clipped == own) {
      ASSERT_EQ(got, own);
    } else {
      // clipping can keep a strip the alpha never reaches
      ASSERT_GE(got.x_min(), clipped->x_min());
      ASSERT_GE(got.y_min(), clipped->y_min());
      ASSERT_LE(got.x_max(), clipped->x_max());
      ASSERT_LE(got.y_max(), clipped->y_max());
    }
  }
}

TEST(BBoxIou, KnownValues) {
  EXPECT_DOUBLE_EQ(iou({0, 0, 2, 2}, {0, 0, 2, 2}), 1.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 2, 2}, {5, 5, 6, 6}), 0.0);
  EXPECT_NEAR(iou({0, 0, 2, 2}, {1, 1, 3, 3}), 1.0 / 7.0, 1e-12);
}

TEST(BBox, DegenerateRejected) {
  EXPECT_THROW(BBox(0, 0, 0, 3), InvalidArgument);
  EXPECT_THROW(BBox(2, 2, 1, 5), InvalidArgument);
}

TEST(Resize, AreaAverageOfBlocks) {
  const Image src = random_rgb(8, 6, 15);
  const Image out = resize_area(src, {4, 3});
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 4; ++x) {
      for (int c = 0; c < 3; ++c) {
        const int sum = src.at(2 * x, 2 * y, c) + src.at(2 * x + 1, 2 * y, c) +
                        src.at(2 * x, 2 * y + 1, c) + src.at(2 * x + 1, 2 * y + 1, c);
        ASSERT_NEAR(out.at(x, y, c), sum / 4.0, 0.5 + 1e-9);
      }
    }
  }
}

TEST(Resize, ConstantStaysConstant) {
  const std::uint8_t v[] = {12, 200, 77};
  const Image src = Image::filled(37, 23, 3, v);
  for (const Size t : {Size{5, 5}, Size{37, 23}, Size{80, 11}, Size{1, 1}}) {
    const Image out = resize(src, t);
    ASSERT_EQ(out, Image::filled(t.width, t.height, 3, v));
  }
}

TEST(Flip, TwiceIsIdentity) {
  const Image src = random_rgba(13, 7, 16, true);
  EXPECT_EQ(flip_horizontal(flip_horizontal(src)), src);
  EXPECT_EQ(flip_vertical(flip_vertical(src)), src);
  EXPECT_EQ(flip_horizontal(src).at(0, 0, 1), src.at(12, 0, 1));
  EXPECT_EQ(flip_vertical(src).at(0, 0, 1), src.at(0, 6, 1));
}

TEST(PadToSquare, ReplicatesEdges) {
  const Image src = random_rgb(6, 2, 17);
  const Image sq = pad_to_square_replicate(src);
  ASSERT_EQ(sq.width(), 6);
  ASSERT_EQ(sq.height(), 6);
  for (int x = 0; x < 6; ++x) {
    EXPECT_EQ(sq.at(x, 0, 0), src.at(x, 0, 0));
    EXPECT_EQ(sq.at(x, 5, 0), src.at(x, 1, 0));
  }
}

TEST(PngIo, RoundTripIsLossless) {
  const auto dir = testing::scratch_dir("imaging_png");
  const Image rgba = random_rgba(19, 11, 18, true);
  const Image rgb = random_rgb(7, 5, 19);
  write_png(rgba, dir / "a.png");
  write_png(rgb, dir / "b.png");
  EXPECT_EQ(read_image(dir / "a.png"), rgba);
  EXPECT_EQ(read_image(dir / "b.png"), rgb);
  EXPECT_EQ(read_image_size(dir / "a.png"), (Size{19, 11}));
  EXPECT_FALSE(std::filesystem::exists(dir / "a.png.tmp"));
  EXPECT_THROW(read_image(dir / "missing.png"), IoError);
}

}  // namespace
}  // namespace swarmloc::imaging
