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
#include <string>
#include <vector>

#include "swarmloc/crops/crop_library.hpp"

namespace swarmloc::dataset {

struct LoadedCropLibrary {
  crops::CropLibrary library;
  /// One message per crop that had to be re-tightened on load.
  std::vector<std::string> warnings;
};

/// Indexes `<root>/<type>/<id>/*.png`. Every file must be RGBA; crops with
/// transparent borders are re-tightened and reported in `warnings`.
/// Throws ConfigError for an empty or non-conforming library.
LoadedCropLibrary load_crop_library(const std::filesystem::path& root);

/// Writes a crop as `<root>/<type>/<id>/<name>.png`.
std::filesystem::path save_crop(const crops::RobotCrop& crop,
                                const std::filesystem::path& root,
                                const std::string& name);

/// Loads every RGBA PNG directly inside `dir` (decoys carry no labels).
std::vector<imaging::Image> load_decoy_library(const std::filesystem::path& dir);

/// Sorted list of PNG/JPEG files directly inside `dir`.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

}  // namespace swarmloc::dataset
