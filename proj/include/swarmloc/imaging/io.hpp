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

#include <filesystem>

#include "swarmloc/imaging/image.hpp"

namespace swarmloc::imaging {

/// Reads a PNG or JPEG file. Gray inputs are expanded to RGB; the alpha
/// channel is kept when the file has one. Throws IoError.
Image read_image(const std::filesystem::path& path);

/// Reads the pixel dimensions without decoding the whole file when possible.
Size read_image_size(const std::filesystem::path& path);

/// Writes `image` as PNG (RGB or RGBA) with fixed compression settings, so
/// equal images give byte-identical files. Throws IoError.
void write_png(const Image& image, const std::filesystem::path& path);

/// Reads a single-channel 0/255 PNG as a mask (any nonzero value is set).
BinaryMask read_mask(const std::filesystem::path& path);
void write_mask(const BinaryMask& mask, const std::filesystem::path& path);

}  // namespace swarmloc::imaging
