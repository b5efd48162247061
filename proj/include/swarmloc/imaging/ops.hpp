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

#include "swarmloc/imaging/image.hpp"

namespace swarmloc::imaging {

/// Pastes RGBA `src` over RGB `dst` with its top-left corner at `top_left`.
/// Per channel: out = src * a + dst * (1 - a), a = alpha / 255, rounded to
/// nearest. Pixels of `src` falling outside `dst` are discarded.
Image alpha_composite(const Image& dst, const Image& src, PixelPoint top_left);

/// In-place variant of alpha_composite.
void alpha_composite_inplace(Image& dst, const Image& src, PixelPoint top_left);

/// Scales and rotates an RGBA image about its center. Positive rotation is
/// counterclockwise as displayed (y axis pointing down). The output canvas is
/// the tight axis-aligned extent of the transformed source rectangle; target
/// pixels whose centers map outside the source are fully transparent.
/// Sampling is bilinear with alpha-weighted color, so transparent source
/// pixels never bleed color into the result. Samples beyond the source edge
/// count as transparent, which anti-aliases the outline.
///
/// Throws InvalidArgument when scale <= 0 or src is not RGBA.
Image transform_rgba(const Image& src, double scale, double rotation_deg);

/// Canvas size transform_rgba produces for a width x height source.
Size transformed_extent(int width, int height, double scale,
                        double rotation_deg);

/// Minimal box holding every set pixel. Throws EmptyMaskError otherwise.
BBox tight_bbox(const BinaryMask& mask);
/// Minimal box holding every pixel with alpha > 0.
BBox tight_bbox(const Image& rgba);

/// Mask of pixels with alpha > 0.
BinaryMask alpha_mask(const Image& rgba);

/// Copy of the pixels inside `box`, which must lie within the image.
Image crop(const Image& image, const BBox& box);
BinaryMask crop(const BinaryMask& mask, const BBox& box);

/// Box clipped to the image extent; nullopt when nothing is left.
std::optional<BBox> clip_to(const BBox& box, int width, int height);

Image flip_horizontal(const Image& image);
Image flip_vertical(const Image& image);

/// Drops the alpha channel (RGBA -> RGB); RGB input is returned as is.
Image to_rgb(const Image& image);
/// Adds an opaque alpha channel (RGB -> RGBA); RGBA input is returned as is.
Image to_rgba(const Image& image);
/// RGB image with `mask` as its alpha plane (set -> 255, unset -> 0).
Image with_alpha(const Image& rgb, const BinaryMask& mask);

/// Centers the image on a square canvas, replicating edge pixels into the
/// padding.
Image pad_to_square_replicate(const Image& image);

/// Area-averaging resample. Each target pixel is the coverage-weighted mean
/// of the source pixels its footprint overlaps.
Image resize_area(const Image& image, Size target);

/// Bilinear resample with pixel-center alignment and clamp-to-edge borders.
Image resize_bilinear(const Image& image, Size target);

/// Area averaging when shrinking in both axes, bilinear otherwise.
Image resize(const Image& image, Size target);

}  // namespace swarmloc::imaging
