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

#include "swarmloc/compose/compositor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "swarmloc/compose/rng.hpp"
#include "swarmloc/compose/spec_io.hpp"
#include "swarmloc/crops/extraction.hpp"
#include "swarmloc/crops/morphology.hpp"
#include "swarmloc/dataset/crop_library_io.hpp"
#include "swarmloc/dataset/digest.hpp"
#include "swarmloc/errors.hpp"
#include "swarmloc/imaging/io.hpp"
#include "swarmloc/imaging/ops.hpp"
#include "swarmloc/parallel.hpp"

namespace swarmloc::compose {

namespace {

constexpr std::uint64_t kScheduleStream = ~std::uint64_t{0};
constexpr std::uint64_t kDecoyStream = 1;

// n values in [0, k) whose counts differ by at most one, in random order.
// Which values receive the extra use is itself random.
std::vector<std::size_t> balanced_sequence(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> labels(k);
  std::iota(labels.begin(), labels.end(), 0);
  rng.shuffle(std::span<std::size_t>(labels));
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = labels[i % k];
  rng.shuffle(std::span<std::size_t>(out));
  return out;
}

std::vector<std::size_t> random_sequence(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> out(n);
  for (auto& v : out) {
    v = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(k) - 1));
  }
  return out;
}

std::size_t opaque_count(const Image& sprite) {
  std::size_t n = 0;
  for (int y = 0; y < sprite.height(); ++y) {
    for (int x = 0; x < sprite.width(); ++x) n += sprite.pixel(x, y)[3] > 0;
  }
  return n;
}

// Opaque sprite pixels that land on a width x height canvas.
std::size_t on_canvas_count(const Image& sprite, imaging::PixelPoint at, int width,
                            int height) {
  std::size_t n = 0;
  const int y0 = std::max(0, -at.y);
  const int y1 = std::min(sprite.height(), height - at.y);
  const int x0 = std::max(0, -at.x);
  const int x1 = std::min(sprite.width(), width - at.x);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) n += sprite.pixel(x, y)[3] > 0;
  }
  return n;
}

bool hits(const Image& sprite, imaging::PixelPoint at, const BinaryMask& forbidden) {
  const int y0 = std::max(0, -at.y);
  const int y1 = std::min(sprite.height(), forbidden.height() - at.y);
  const int x0 = std::max(0, -at.x);
  const int x1 = std::min(sprite.width(), forbidden.width() - at.x);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      if (sprite.pixel(x, y)[3] > 0 && forbidden.get(x + at.x, y + at.y)) return true;
    }
  }
  return false;
}

// Uniform draw of a top-left corner along one axis that can still satisfy the
// on-canvas fraction.
int sample_axis(Rng& rng, int sprite, int canvas, double min_on_canvas) {
  const int slack = static_cast<int>(std::floor(sprite * (1.0 - min_on_canvas)));
  int lo = -slack;
  int hi = canvas - sprite + slack;
  if (hi < lo) {
    lo = -sprite + 1;
    hi = canvas - 1;
  }
  return static_cast<int>(rng.uniform_int(lo, hi));
}

struct Placed {
  bool ok = false;
  imaging::PixelPoint top_left;
};

Placed place_sprite(Rng& rng, const Image& sprite, int width, int height,
                    double min_on_canvas, const BinaryMask* forbidden,
                    int attempts) {
  const auto total = static_cast<double>(opaque_count(sprite));
  for (int a = 0; a < attempts; ++a) {
    const imaging::PixelPoint at{sample_axis(rng, sprite.width(), width, min_on_canvas),
                                 sample_axis(rng, sprite.height(), height, min_on_canvas)};
    const auto visible = static_cast<double>(on_canvas_count(sprite, at, width, height));
    if (visible <= 0 || visible < min_on_canvas * total) continue;
    if (forbidden != nullptr && hits(sprite, at, *forbidden)) continue;
    return {true, at};
  }
  return {};
}

Image random_sprite(Rng& rng, const Image& source, DoubleRange scale,
                    bool rotate, double& rotation_out) {
  rotation_out = rotate ? static_cast<double>(rng.uniform_int(0, 35999)) / 100.0 : 0.0;
  const double s = scale.min == scale.max ? scale.min : rng.uniform(scale.min, scale.max);
  return crops::retighten(imaging::transform_rgba(source, s, rotation_out));
}

}  // namespace

void CompositionSpec::validate() const {
  if (frame_count < 1) throw ConfigError("frame count must be >= 1");
  if (robots_per_frame.min < 1 || robots_per_frame.max < robots_per_frame.min) {
    throw ConfigError("robots-per-frame range must satisfy 1 <= min <= max");
  }
  if (!(scale_range.min > 0) || scale_range.max < scale_range.min) {
    throw ConfigError("scale range must be positive with min <= max");
  }
  if (decoys_per_frame < 0) throw ConfigError("decoys per frame must be >= 0");
  if (!(min_on_canvas > 0 && min_on_canvas <= 1)) {
    throw ConfigError("min_on_canvas must lie in (0, 1]");
  }
  if (clearance < 0) throw ConfigError("clearance must be >= 0");
  if (max_placement_attempts < 1) throw ConfigError("placement attempts must be >= 1");
}

std::optional<BBox> footprint_bbox(const Paste& paste, int width, int height) {
  int x0 = width, y0 = height, x1 = -1, y1 = -1;
  for (int y = 0; y < paste.sprite.height(); ++y) {
    const int fy = y + paste.top_left.y;
    if (fy < 0 || fy >= height) continue;
    for (int x = 0; x < paste.sprite.width(); ++x) {
      const int fx = x + paste.top_left.x;
      if (fx < 0 || fx >= width || paste.sprite.pixel(x, y)[3] == 0) continue;
      x0 = std::min(x0, fx);
      x1 = std::max(x1, fx);
      y0 = std::min(y0, fy);
      y1 = std::max(y1, fy);
    }
  }
  if (x1 < 0) return std::nullopt;
  return BBox(x0, y0, x1 + 1, y1 + 1);
}

Compositor::Compositor(CompositionSpec spec, CompositionAssets assets)
    : spec_(std::move(spec)), assets_(std::move(assets)) {
  spec_.validate();
  if (assets_.crops.empty()) throw ConfigError("crop library is empty");
  if (assets_.backgrounds.empty()) throw ConfigError("no background sources");
  for (const auto& src : assets_.backgrounds) {
    if (src.images.empty()) {
      throw ConfigError("background source '" + src.name + "' has no images");
    }
  }
  if (spec_.decoys_per_frame > 0 && assets_.decoys.empty()) {
    throw ConfigError("decoys requested but the decoy library is empty");
  }
  build_schedule();
}

void Compositor::build_schedule() {
  const auto n = static_cast<std::size_t>(spec_.frame_count);
  Rng plan_rng(derive_seed(spec_.seed, kScheduleStream));
  plans_.assign(n, {});

  std::size_t placements = 0;
  for (std::size_t i = 0; i < n; ++i) {
    plans_[i].seed = derive_seed(spec_.seed, i);
    Rng frame_rng(plans_[i].seed);
    const auto count = static_cast<std::size_t>(
        frame_rng.uniform_int(spec_.robots_per_frame.min, spec_.robots_per_frame.max));
    plans_[i].placements.resize(count);
    placements += count;
  }

  const std::size_t sources = assets_.backgrounds.size();
  const auto source_of = spec_.balance_backgrounds
                             ? balanced_sequence(n, sources, plan_rng)
                             : random_sequence(n, sources, plan_rng);
  std::vector<std::vector<std::size_t>> frames_by_source(sources);
  for (std::size_t i = 0; i < n; ++i) {
    plans_[i].source = source_of[i];
    frames_by_source[source_of[i]].push_back(i);
  }
  for (std::size_t s = 0; s < sources; ++s) {
    const auto& members = frames_by_source[s];
    const auto images = balanced_sequence(members.size(),
                                          assets_.backgrounds[s].images.size(), plan_rng);
    for (std::size_t k = 0; k < members.size(); ++k) plans_[members[k]].image = images[k];
  }

  std::vector<std::string> types;
  for (const auto& [type, ids] : assets_.crops.crops) {
    std::size_t crops_of_type = 0;
    for (const auto& [id, list] : ids) crops_of_type += list.size();
    if (crops_of_type > 0) types.push_back(type);
  }
  const auto type_of = spec_.balance_types
                           ? balanced_sequence(placements, types.size(), plan_rng)
                           : random_sequence(placements, types.size(), plan_rng);

  std::vector<Placement> flat(placements);
  std::vector<std::vector<std::size_t>> slots_by_type(types.size());
  for (std::size_t p = 0; p < placements; ++p) {
    flat[p].robot_type = types[type_of[p]];
    slots_by_type[type_of[p]].push_back(p);
  }
  for (std::size_t t = 0; t < types.size(); ++t) {
    std::vector<std::string> ids;
    for (const auto& [id, list] : assets_.crops.crops.at(types[t])) {
      if (!list.empty()) ids.push_back(id);
    }
    const auto& slots = slots_by_type[t];
    const auto id_of = spec_.balance_instances
                           ? balanced_sequence(slots.size(), ids.size(), plan_rng)
                           : random_sequence(slots.size(), ids.size(), plan_rng);
    std::vector<std::vector<std::size_t>> slots_by_id(ids.size());
    for (std::size_t k = 0; k < slots.size(); ++k) {
      flat[slots[k]].instance_id = ids[id_of[k]];
      slots_by_id[id_of[k]].push_back(slots[k]);
    }
    for (std::size_t d = 0; d < ids.size(); ++d) {
      const auto& list = assets_.crops.crops.at(types[t]).at(ids[d]);
      const auto crop_of = balanced_sequence(slots_by_id[d].size(), list.size(), plan_rng);
      for (std::size_t k = 0; k < slots_by_id[d].size(); ++k) {
        flat[slots_by_id[d][k]].crop_index = crop_of[k];
      }
    }
  }

  std::size_t cursor = 0;
  for (auto& plan : plans_) {
    for (auto& placement : plan.placements) placement = flat[cursor++];
  }
}

ComposedFrame Compositor::compose_frame(std::size_t frame_index) const {
  if (frame_index >= plans_.size()) {
    throw InvalidArgument("frame index " + std::to_string(frame_index) +
                          " beyond frame count " + std::to_string(plans_.size()));
  }
  const FramePlan& plan = plans_[frame_index];
  Rng rng(plan.seed);
  rng.next();  // robot count, drawn while scheduling

  const BackgroundSource& source = assets_.backgrounds[plan.source];
  ComposedFrame out;
  out.image = imaging::to_rgb(source.images[plan.image]);
  out.seed = plan.seed;
  out.background = source.name;
  const int width = out.image.width();
  const int height = out.image.height();

  // Topmost robot per pixel, -1 where none.
  std::vector<std::int32_t> owner(static_cast<std::size_t>(width) * height, -1);
  BinaryMask occupied(width, height);

  for (std::size_t k = 0; k < plan.placements.size(); ++k) {
    const Placement& p = plan.placements[k];
    const auto& crop = assets_.crops.crops.at(p.robot_type).at(p.instance_id).at(p.crop_index);
    double rotation = 0;
    Image sprite = random_sprite(rng, crop.image, spec_.scale_range,
                                 spec_.random_rotation, rotation);

    BinaryMask forbidden;
    if (!spec_.allow_robot_overlap) forbidden = crops::dilate(occupied, spec_.clearance);
    Placed placed = place_sprite(rng, sprite, width, height, spec_.min_on_canvas,
                                 spec_.allow_robot_overlap ? nullptr : &forbidden,
                                 spec_.max_placement_attempts);
    if (!placed.ok) {
      if (!spec_.allow_robot_overlap) {
        throw PlacementInfeasible("frame " + std::to_string(frame_index) +
                                  ": no free position for robot " + std::to_string(k));
      }
      placed.top_left = {(width - sprite.width()) / 2, (height - sprite.height()) / 2};
    }

    Paste paste{std::move(sprite), placed.top_left};
    const auto box = footprint_bbox(paste, width, height);
    if (!box) continue;
    imaging::alpha_composite_inplace(out.image, paste.sprite, paste.top_left);
    const auto label = static_cast<std::int32_t>(out.robots.size());
    for (int y = box->y_min(); y < box->y_max(); ++y) {
      for (int x = box->x_min(); x < box->x_max(); ++x) {
        if (paste.sprite.pixel(x - paste.top_left.x, y - paste.top_left.y)[3] == 0) continue;
        owner[static_cast<std::size_t>(y) * width + x] = label;
        occupied.set(x, y);
      }
    }
    out.robots.push_back({p.robot_type, p.instance_id, *box, rotation, 1.0});
    out.robot_pastes.push_back(std::move(paste));
  }

  std::vector<std::size_t> visible(out.robots.size(), 0);
  for (const auto o : owner) {
    if (o >= 0) ++visible[static_cast<std::size_t>(o)];
  }
  for (std::size_t k = 0; k < out.robots.size(); ++k) {
    const auto total = static_cast<double>(on_canvas_count(
        out.robot_pastes[k].sprite, out.robot_pastes[k].top_left, width, height));
    out.robots[k].visibility = std::round(visible[k] / total * 1e4) / 1e4;
  }

  if (spec_.decoys_per_frame > 0) {
    DecoyOptions options;
    options.scale_range = spec_.scale_range;
    options.min_on_canvas = spec_.min_on_canvas;
    options.clearance = spec_.clearance;
    options.max_attempts = std::max(spec_.max_placement_attempts, 500);
    try {
      auto injected = inject_decoys(out.image, out.robots, assets_.decoys,
                                    spec_.decoys_per_frame,
                                    derive_seed(plan.seed, kDecoyStream), options,
                                    &occupied);
      out.image = std::move(injected.image);
      out.decoy_pastes = std::move(injected.pastes);
    } catch (const PlacementInfeasible& e) {
      throw PlacementInfeasible("frame " + std::to_string(frame_index) + ": " + e.what());
    }
  }
  return out;
}

DecoyInjection inject_decoys(const Image& frame, std::span<const GroundTruthRecord> gt,
                             std::span<const Image> decoy_library, int count,
                             std::uint64_t seed, const DecoyOptions& options,
                             const BinaryMask* robot_footprint) {
  DecoyInjection out{frame, {}};
  if (count <= 0) return out;
  if (decoy_library.empty()) throw ConfigError("decoy library is empty");

  BinaryMask robots(frame.width(), frame.height());
  if (robot_footprint != nullptr) {
    robots = *robot_footprint;
  } else {
    for (const auto& r : gt) {
      const auto box = imaging::clip_to(r.bbox, frame.width(), frame.height());
      if (!box) continue;
      for (int y = box->y_min(); y < box->y_max(); ++y) {
        for (int x = box->x_min(); x < box->x_max(); ++x) robots.set(x, y);
      }
    }
  }
  const BinaryMask forbidden = crops::dilate(robots, options.clearance);

  Rng rng(seed);
  for (int k = 0; k < count; ++k) {
    const auto pick = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(decoy_library.size()) - 1));
    double rotation = 0;
    Image sprite = random_sprite(rng, decoy_library[pick], options.scale_range, true, rotation);
    const Placed placed = place_sprite(rng, sprite, frame.width(), frame.height(),
                                       options.min_on_canvas, &forbidden,
                                       options.max_attempts);
    if (!placed.ok) {
      throw PlacementInfeasible("no non-occluding position for decoy " +
                                std::to_string(k) + " after " +
                                std::to_string(options.max_attempts) + " attempts");
    }
    imaging::alpha_composite_inplace(out.image, sprite, placed.top_left);
    out.pastes.push_back({std::move(sprite), placed.top_left});
  }
  return out;
}

CompositionAssets load_assets(const CompositionSpec& spec) {
  CompositionAssets assets;
  if (spec.background_dirs.empty()) throw ConfigError("no background directories given");
  for (const auto& dir : spec.background_dirs) {
    BackgroundSource src;
    src.name = std::filesystem::path(dir).filename().string();
    if (src.name.empty()) src.name = std::filesystem::path(dir).parent_path().filename().string();
    for (const auto& file : dataset::list_images(dir)) {
      src.images.push_back(imaging::to_rgb(imaging::read_image(file)));
    }
    if (src.images.empty()) throw ConfigError("background directory " + dir + " has no images");
    assets.backgrounds.push_back(std::move(src));
  }
  if (spec.crop_library.empty()) throw ConfigError("no crop library given");
  assets.crops = dataset::load_crop_library(spec.crop_library).library;
  if (!spec.decoy_library.empty()) assets.decoys = dataset::load_decoy_library(spec.decoy_library);
  return assets;
}

std::string spec_hash(const CompositionSpec& spec) {
  return dataset::sha256_hex(composition_spec_to_json(spec));
}

dataset::DatasetManifest generate_dataset(const Compositor& compositor,
                                          const std::filesystem::path& output_dir,
                                          int threads, std::optional<std::string> created) {
  const auto n = compositor.frame_count();
  std::vector<dataset::FrameRecord> records(n);
  parallel_for(n, threads, [&](std::size_t i) {
    char name[32];
    std::snprintf(name, sizeof name, "frames/%06zu.png", i);
    ComposedFrame frame = compositor.compose_frame(i);
    try {
      imaging::write_png(frame.image, output_dir / name);
    } catch (const IoError& e) {
      throw IoError("frame " + std::to_string(i) + ": " + e.what());
    }
    dataset::FrameRecord& r = records[i];
    r.image = name;
    r.width = frame.image.width();
    r.height = frame.image.height();
    r.seed = frame.seed;
    r.background = frame.background;
    r.robots = std::move(frame.robots);
    r.decoys = static_cast<int>(frame.decoy_pastes.size());
  });

  dataset::DatasetManifest manifest;
  manifest.frames = std::move(records);
  manifest.meta.spec_hash = spec_hash(compositor.spec());
  manifest.meta.seed = compositor.spec().seed;
  manifest.meta.created = std::move(created);
  manifest.meta.counts = dataset::recount(manifest.frames);
  dataset::write_manifest(manifest, output_dir / "manifest.jsonl");
  return manifest;
}

}  // namespace swarmloc::compose
