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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "swarmloc/compose/ground_truth.hpp"
#include "swarmloc/crops/crop_library.hpp"
#include "swarmloc/dataset/manifest.hpp"
#include "swarmloc/imaging/image.hpp"

namespace swarmloc::compose {

using imaging::BBox;
using imaging::BinaryMask;
using imaging::Image;

struct IntRange {
  int min = 0;
  int max = 0;
};

struct DoubleRange {
  double min = 0.0;
  double max = 0.0;
};

/// Everything that controls a generated dataset. Paths are only used by the
/// file-based entry points; the in-memory Compositor takes loaded assets.
struct CompositionSpec {
  std::vector<std::string> background_dirs;
  std::string crop_library;
  std::string decoy_library;

  int frame_count = 1;
  IntRange robots_per_frame{1, 4};
  DoubleRange scale_range{0.5, 1.5};
  std::uint64_t seed = 0;

  bool balance_backgrounds = true;
  bool balance_types = true;
  bool balance_instances = true;

  int decoys_per_frame = 0;
  bool random_rotation = true;
  /// Share of a paste's opaque pixels that must land on the canvas.
  double min_on_canvas = 0.5;
  bool allow_robot_overlap = true;
  /// Minimum gap in pixels between non-overlapping pastes.
  int clearance = 2;
  int max_placement_attempts = 200;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

struct BackgroundSource {
  std::string name;
  std::vector<Image> images;  // RGB
};

struct CompositionAssets {
  std::vector<BackgroundSource> backgrounds;
  crops::CropLibrary crops;
  std::vector<Image> decoys;  // RGBA
};

/// Where a transformed RGBA sprite went; kept so ground truth can be audited.
struct Paste {
  Image sprite;
  imaging::PixelPoint top_left;
};

struct ComposedFrame {
  Image image;
  std::vector<GroundTruthRecord> robots;
  std::vector<Paste> robot_pastes;  // index-aligned with robots
  std::vector<Paste> decoy_pastes;
  std::uint64_t seed = 0;
  std::string background;
};

/// Tight box of the sprite's alpha footprint after pasting at `top_left`,
/// clipped to a width x height canvas; nullopt when nothing lands on it.
std::optional<BBox> footprint_bbox(const Paste& paste, int width, int height);

/// Deterministic frame synthesizer. The constructor draws the whole balancing
/// schedule up front; compose_frame() then depends only on (seed, index) and
/// may run concurrently for different indices.
class Compositor {
 public:
  Compositor(CompositionSpec spec, CompositionAssets assets);

  const CompositionSpec& spec() const { return spec_; }
  std::size_t frame_count() const { return plans_.size(); }

  ComposedFrame compose_frame(std::size_t frame_index) const;

 private:
  struct Placement {
    std::string robot_type;
    std::string instance_id;
    std::size_t crop_index = 0;
  };
  struct FramePlan {
    std::uint64_t seed = 0;
    std::size_t source = 0;
    std::size_t image = 0;
    std::vector<Placement> placements;
  };

  void build_schedule();

  CompositionSpec spec_;
  CompositionAssets assets_;
  std::vector<FramePlan> plans_;
};

struct DecoyOptions {
  DoubleRange scale_range{0.5, 1.5};
  double min_on_canvas = 0.5;
  int clearance = 2;
  int max_attempts = 500;
};

struct DecoyInjection {
  Image image;
  std::vector<Paste> pastes;
};

/// Pastes `count` randomly chosen, scaled and rotated decoys so that no decoy
/// pixel touches a robot pixel (nor comes within `clearance` of one). Robot
/// pixels come from `robot_footprint` when given, otherwise every pixel of
/// every ground-truth box counts as robot. Throws PlacementInfeasible when a
/// decoy cannot be placed within the attempt budget.
DecoyInjection inject_decoys(const Image& frame,
                             std::span<const GroundTruthRecord> gt,
                             std::span<const Image> decoy_library, int count,
                             std::uint64_t seed, const DecoyOptions& options = {},
                             const BinaryMask* robot_footprint = nullptr);

/// Loads backgrounds, crops and decoys named by the spec's paths.
CompositionAssets load_assets(const CompositionSpec& spec);

/// Stable hex digest of the spec's JSON form.
std::string spec_hash(const CompositionSpec& spec);

/// Renders every frame of `compositor` into `output_dir/frames/NNNNNN.png`
/// and writes `output_dir/manifest.jsonl` plus its metadata file. Frames are
/// rendered on `threads` workers; the output is byte-identical for any thread
/// count. `created` is stored verbatim in the metadata (nullopt omits it).
dataset::DatasetManifest generate_dataset(
    const Compositor& compositor, const std::filesystem::path& output_dir,
    int threads = 1, std::optional<std::string> created = std::nullopt);

}  // namespace swarmloc::compose
