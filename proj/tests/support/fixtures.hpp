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

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "swarmloc/compose/compositor.hpp"
#include "swarmloc/crops/crop_library.hpp"
#include "swarmloc/imaging/image.hpp"
#include "swarmloc/pipeline/reference.hpp"

namespace swarmloc::testing {

using imaging::Image;
using Rgb = std::array<std::uint8_t, 3>;

/// Synthetic robot in canonical orientation (front towards +x). Types are
/// "copter" (round, 37x37) and "youbot" (64x32); the instance index picks the
/// colour code of the identification markers.
Image robot_sprite(const std::string& type, int instance);

/// Non-robot clutter: 0 small disc, 1 long bar, 2 large square.
Image decoy_sprite(int kind);

/// Random opaque blob with a bright colour, 32..96 pixels on a side: a union
/// of one to four discs and rectangles that all cover the centre.
Image random_sprite(std::uint64_t seed);

Image plain_background(int width, int height, Rgb color);
/// Per-pixel uniform noise in [lo, hi] on every channel.
Image noise_background(int width, int height, std::uint64_t seed, int lo = 0, int hi = 140);

/// Library of `instances` ids per type, named "0", "1", ...
crops::CropLibrary synthetic_library(const std::vector<std::string>& types, int instances);
std::vector<Image> synthetic_decoys();

/// Size priors for frames downsampled by `factor` (stage-1 width / frame
/// width) with robots scaled within `scale`.
std::vector<pipeline::SizePrior> synthetic_priors(double factor, compose::DoubleRange scale);

/// Writes the library, decoys and a plain background set under `root`:
/// crops/, decoys/, backgrounds/plain/.
void write_assets(const std::filesystem::path& root, int instances, int width, int height,
                  Rgb background);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace swarmloc::testing
