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

#include "fixtures.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "swarmloc/compose/rng.hpp"
#include "swarmloc/dataset/crop_library_io.hpp"
#include "swarmloc/errors.hpp"
#include "swarmloc/imaging/io.hpp"
#include "swarmloc/imaging/ops.hpp"

namespace swarmloc::testing {

namespace fs = std::filesystem;

namespace {

constexpr Rgb kPalette[] = {
    {230, 40, 40}, {40, 210, 40}, {50, 70, 230}, {230, 220, 40},
    {40, 210, 220}, {220, 40, 220}, {245, 245, 245}, {240, 140, 30},
};
constexpr int kPaletteSize = 8;

void put(Image& img, int x, int y, Rgb c) {
  if (!img.contains(x, y)) return;
  std::uint8_t* p = img.pixel(x, y);
  p[0] = c[0];
  p[1] = c[1];
  p[2] = c[2];
  p[3] = 255;
}

void disc(Image& img, double cx, double cy, double r, Rgb c) {
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      if (dx * dx + dy * dy <= r * r) put(img, x, y, c);
    }
  }
}

void rect(Image& img, int x0, int y0, int x1, int y1, Rgb c) {
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) put(img, x, y, c);
  }
}

Rgb code(int instance, int slot) { return kPalette[(instance * 3 + slot * 5 + instance / 3) % kPaletteSize]; }

}  // namespace

Image robot_sprite(const std::string& type, int instance) {
  if (type == "copter") {
    Image img(37, 37, 4);
    disc(img, 18.5, 18.5, 18.5, {185, 185, 185});
    disc(img, 9.5, 9.5, 5, code(instance, 0));
    disc(img, 27.5, 9.5, 5, code(instance, 1));
    disc(img, 9.5, 27.5, 5, code(instance, 2));
    disc(img, 27.5, 27.5, 5, code(instance, 3));
    rect(img, 28, 15, 37, 22, {240, 140, 30});
    return img;
  }
  if (type == "youbot") {
    Image img(64, 32, 4);
    rect(img, 0, 0, 64, 32, {170, 170, 200});
    rect(img, 55, 0, 64, 32, {235, 215, 40});
    for (int k = 0; k < 3; ++k) rect(img, 6 + 15 * k, 6, 16 + 15 * k, 26, code(instance, k));
    return img;
  }
  throw std::invalid_argument("unknown synthetic robot type " + type);
}

Image decoy_sprite(int kind) {
  switch (kind) {
    case 0: {
      Image img(12, 12, 4);
      disc(img, 6, 6, 6, {240, 120, 200});
      return img;
    }
    case 1: {
      Image img(100, 6, 4);
      rect(img, 0, 0, 100, 6, {200, 230, 120});
      return img;
    }
    default: {
      Image img(96, 96, 4);
      rect(img, 0, 0, 96, 96, {120, 200, 240});
      return img;
    }
  }
}

Image random_sprite(std::uint64_t seed) {
  compose::Rng rng(seed);
  const int w = static_cast<int>(rng.uniform_int(32, 96));
  const int h = static_cast<int>(rng.uniform_int(32, 96));
  Image img(w, h, 4);
  const int parts = static_cast<int>(rng.uniform_int(1, 4));
  for (int k = 0; k < parts; ++k) {
    Rgb c{};
    for (auto& v : c) v = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
    c[static_cast<std::size_t>(rng.uniform_int(0, 2))] =
        static_cast<std::uint8_t>(rng.uniform_int(190, 255));
    // every part covers the centre, so the blob stays connected
    if (rng.bernoulli(0.5)) {
      const double r = rng.uniform(0.35, 0.5) * std::min(w, h);
      const double cx = rng.uniform(std::max(r, w / 2.0 - r / 2), std::min(w - r, w / 2.0 + r / 2));
      const double cy = rng.uniform(std::max(r, h / 2.0 - r / 2), std::min(h - r, h / 2.0 + r / 2));
      disc(img, cx, cy, r, c);
    } else {
      const int x0 = static_cast<int>(rng.uniform_int(0, w / 4));
      const int y0 = static_cast<int>(rng.uniform_int(0, h / 4));
      rect(img, x0, y0, static_cast<int>(rng.uniform_int(3 * w / 4, w)),
           static_cast<int>(rng.uniform_int(3 * h / 4, h)), c);
    }
  }
  return imaging::crop(img, imaging::tight_bbox(img));
}

Image plain_background(int width, int height, Rgb color) {
  return Image::filled(width, height, 3, color);
}

Image noise_background(int width, int height, std::uint64_t seed, int lo, int hi) {
  compose::Rng rng(seed);
  Image img(width, height, 3);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.uniform_int(lo, hi));
  return img;
}

crops::CropLibrary synthetic_library(const std::vector<std::string>& types, int instances) {
  crops::CropLibrary lib;
  for (const auto& type : types) {
    for (int i = 0; i < instances; ++i) {
      crops::RobotCrop c;
      c.image = robot_sprite(type, i);
      c.robot_type = type;
      c.instance_id = std::to_string(i);
      c.provenance.frame_id = "synthetic";
      lib.add(std::move(c));
    }
  }
  return lib;
}

std::vector<Image> synthetic_decoys() { return {decoy_sprite(0), decoy_sprite(1), decoy_sprite(2)}; }

std::vector<pipeline::SizePrior> synthetic_priors(double factor, compose::DoubleRange scale) {
  const double f2 = factor * factor;
  const double lo = scale.min * scale.min * f2 * 0.75;
  const double hi = scale.max * scale.max * f2 * 1.25;
  const double copter_area = 3.14159265 * 18.5 * 18.5;
  const double youbot_area = 64.0 * 32.0;
  return {
      {"copter", copter_area * lo, copter_area * hi, 1.0, 1.3},
      {"youbot", youbot_area * lo, youbot_area * hi, 1.6, 2.5},
  };
}

void write_assets(const fs::path& root, int instances, int width, int height, Rgb background) {
  const auto lib = synthetic_library({"copter", "youbot"}, instances);
  for (const auto& [type, ids] : lib.crops) {
    for (const auto& [id, list] : ids) {
      for (std::size_t k = 0; k < list.size(); ++k) {
        dataset::save_crop(list[k], root / "crops", "crop" + std::to_string(k));
      }
    }
  }
  const auto decoys = synthetic_decoys();
  for (std::size_t k = 0; k < decoys.size(); ++k) {
    imaging::write_png(decoys[k], root / "decoys" / ("decoy" + std::to_string(k) + ".png"));
  }
  imaging::write_png(plain_background(width, height, background),
                     root / "backgrounds" / "plain" / "bg0.png");
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("swarmloc_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace swarmloc::testing
