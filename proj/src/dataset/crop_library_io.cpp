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

#include "swarmloc/dataset/crop_library_io.hpp"

#include <algorithm>
#include <cctype>

#include "swarmloc/errors.hpp"
#include "swarmloc/imaging/io.hpp"
#include "swarmloc/imaging/ops.hpp"

namespace swarmloc::dataset {

namespace fs = std::filesystem;

namespace {

std::string lower_ext(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::vector<fs::path> sorted_entries(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<fs::path> list_images(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& p : sorted_entries(dir)) {
    const auto ext = lower_ext(p);
    if (fs::is_regular_file(p) && (ext == ".png" || ext == ".jpg" || ext == ".jpeg")) {
      out.push_back(p);
    }
  }
  return out;
}

LoadedCropLibrary load_crop_library(const fs::path& root) {
  if (!fs::is_directory(root)) {
    throw ConfigError("crop library root is not a directory: " + root.string());
  }
  LoadedCropLibrary out;
  for (const auto& type_dir : sorted_entries(root)) {
    if (!fs::is_directory(type_dir)) {
      throw ConfigError("unexpected file " + type_dir.string() +
                        " (expected <type>/<id>/<frame>.png)");
    }
    for (const auto& id_dir : sorted_entries(type_dir)) {
      if (!fs::is_directory(id_dir)) {
        throw ConfigError("unexpected file " + id_dir.string() +
                          " (expected <type>/<id>/<frame>.png)");
      }
      for (const auto& file : sorted_entries(id_dir)) {
        if (lower_ext(file) != ".png") {
          throw ConfigError("non-PNG entry in crop library: " + file.string());
        }
        imaging::Image img = imaging::read_image(file);
        if (!img.has_alpha()) {
          throw ConfigError("crop without alpha channel: " + file.string());
        }
        crops::RobotCrop crop;
        try {
          crop.image = crops::retighten(img);
        } catch (const EmptyMaskError&) {
          throw ConfigError("crop is fully transparent: " + file.string());
        }
        if (crop.image.width() != img.width() || crop.image.height() != img.height()) {
          out.warnings.push_back("re-tightened " + file.string() + " from " +
                                 std::to_string(img.width()) + "x" +
                                 std::to_string(img.height()) + " to " +
                                 std::to_string(crop.image.width()) + "x" +
                                 std::to_string(crop.image.height()));
        }
        crop.robot_type = type_dir.filename().string();
        crop.instance_id = id_dir.filename().string();
        crop.provenance.frame_id = file.stem().string();
        out.library.add(std::move(crop));
      }
    }
  }
  if (out.library.empty()) {
    throw ConfigError("crop library " + root.string() + " contains no crops");
  }
  return out;
}

fs::path save_crop(const crops::RobotCrop& crop, const fs::path& root,
                   const std::string& name) {
  const fs::path path = root / crop.robot_type / crop.instance_id / (name + ".png");
  imaging::write_png(crop.image, path);
  return path;
}

std::vector<imaging::Image> load_decoy_library(const fs::path& dir) {
  std::vector<imaging::Image> out;
  for (const auto& file : list_images(dir)) {
    imaging::Image img = imaging::read_image(file);
    if (!img.has_alpha()) {
      throw ConfigError("decoy without alpha channel: " + file.string());
    }
    out.push_back(crops::retighten(img));
  }
  return out;
}

}  // namespace swarmloc::dataset
