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

#include "swarmloc/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "json.hpp"
#include "swarmloc/compose/rng.hpp"
#include "swarmloc/dataset/atomic_file.hpp"
#include "swarmloc/dataset/crop_library_io.hpp"
#include "swarmloc/dataset/digest.hpp"
#include "swarmloc/errors.hpp"
#include "swarmloc/imaging/io.hpp"
#include "swarmloc/imaging/ops.hpp"
#include "swarmloc/parallel.hpp"
#include "swarmloc/pipeline/two_stage.hpp"

namespace swarmloc::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void check_label(const std::string& value, const char* what) {
  if (value.empty()) throw ConfigError(std::string(what) + " must not be empty");
  if (value.find('/') != std::string::npos || value == "." || value == "..") {
    throw ConfigError(std::string(what) + " '" + value + "' is not a valid directory name");
  }
}

}  // namespace

ExtractSummary extract_crops(const ExtractOptions& o) {
  if (o.background && o.mask) {
    throw ConfigError("--background and --mask are mutually exclusive");
  }
  if (!o.background && !o.mask) throw ConfigError("one of --background or --mask is required");
  check_label(o.robot_type, "robot type");
  check_label(o.instance_id, "instance id");
  if (o.params.threshold < 0 || o.params.threshold > 255) {
    throw ConfigError("threshold must lie in [0, 255]");
  }
  if (o.params.open_radius < 0 || o.params.close_radius < 0) {
    throw ConfigError("morphology radii must be non-negative");
  }
  if (!fs::is_directory(o.frames)) {
    throw ConfigError("frames directory " + o.frames.string() + " does not exist");
  }
  const auto frames = dataset::list_images(o.frames);
  if (frames.empty()) throw ConfigError("no images in frames directory " + o.frames.string());

  std::optional<imaging::Image> background;
  std::optional<imaging::BinaryMask> mask;
  if (o.background) background = imaging::to_rgb(imaging::read_image(*o.background));
  if (o.mask) mask = imaging::read_mask(*o.mask);

  ExtractSummary summary;
  for (const auto& path : frames) {
    const std::string stem = path.stem().string();
    try {
      const auto frame = imaging::to_rgb(imaging::read_image(path));
      crops::RobotCrop crop =
          background ? crops::extract_crop_automatic(frame, *background, o.robot_type,
                                                     o.instance_id, o.params, stem)
                     : crops::extract_crop(frame, *mask, o.robot_type, o.instance_id, stem,
                                           crops::ExtractionMethod::kManual);
      if (o.align_deg) crop = crops::align_crop(crop, *o.align_deg);
      summary.written.push_back(dataset::save_crop(crop, o.out, stem));
    } catch (const Error& e) {
      summary.failures.push_back(path.filename().string() + ": " + e.what());
    }
  }
  return summary;
}

dataset::DatasetManifest compose_dataset(const ComposeOptions& o) {
  o.spec.validate();
  compose::Compositor compositor(o.spec, compose::load_assets(o.spec));
  return compose::generate_dataset(compositor, o.out, o.threads,
                                   o.timestamp ? std::optional(utc_timestamp()) : std::nullopt);
}

std::string balance_report(const dataset::BalanceCounts& counts) {
  std::ostringstream out;
  for (const auto& [key, values] : counts) {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool first = true;
    out << key << ":\n";
    for (const auto& [value, n] : values) {
      out << "  " << value << ": " << n << '\n';
      lo = first ? n : std::min(lo, n);
      hi = first ? n : std::max(hi, n);
      first = false;
    }
    out << "  spread (max - min): " << (hi - lo) << '\n';
  }
  return out.str();
}

namespace {

struct Variant {
  std::size_t source = 0;
  enum Kind { kOriginal, kFlip, kSsd } kind = kOriginal;
  compose::FlipAxis axis = compose::FlipAxis::kHorizontal;
};

const char* variant_tag(const Variant& v) {
  switch (v.kind) {
    case Variant::kOriginal:
      return "original";
    case Variant::kFlip:
      return v.axis == compose::FlipAxis::kHorizontal ? "flip_horizontal" : "flip_vertical";
    case Variant::kSsd:
      return "ssd_crop";
  }
  return "";
}

}  // namespace

dataset::DatasetManifest augment_dataset(const AugmentOptions& o) {
  if (o.ssd_crops < 0) throw ConfigError("ssd crop count must be non-negative");
  if (!(o.variance_low <= o.variance_high) || o.variance_low <= -0.5) {
    throw ConfigError("box variance needs -0.5 < low <= high");
  }
  if (!o.keep_original && o.flips.empty() && o.ssd_crops == 0) {
    throw ConfigError("augmentation would produce no output");
  }
  const auto source = dataset::read_manifest(o.manifest, true);
  const fs::path base = o.manifest.parent_path();

  std::vector<Variant> variants;
  for (std::size_t i = 0; i < source.frames.size(); ++i) {
    if (o.keep_original) variants.push_back({i, Variant::kOriginal, {}});
    for (const auto axis : o.flips) variants.push_back({i, Variant::kFlip, axis});
    // random crops need at least one box to anchor on
    if (!source.frames[i].robots.empty()) {
      for (int k = 0; k < o.ssd_crops; ++k) variants.push_back({i, Variant::kSsd, {}});
    }
  }

  struct Stage2Label {
    std::string image;
    compose::GroundTruthRecord robot;
    imaging::BBox box;
  };
  dataset::DatasetManifest out;
  out.frames.resize(variants.size());
  std::vector<std::vector<Stage2Label>> labels(variants.size());

  parallel_for(variants.size(), o.threads, [&](std::size_t k) {
    const Variant& v = variants[k];
    const auto& src = source.frames[v.source];
    const auto image = imaging::to_rgb(imaging::read_image(base / src.image));
    const std::uint64_t seed = compose::derive_seed(o.seed, 2 * k);

    dataset::FrameRecord rec = src;
    compose::AugmentedFrame frame;
    switch (v.kind) {
      case Variant::kOriginal:
        frame = {image, src.robots};
        break;
      case Variant::kFlip:
        frame = compose::flip_augment(image, src.robots, v.axis);
        break;
      case Variant::kSsd: {
        auto c = compose::ssd_random_crop(image, src.robots, seed, o.ssd);
        frame = {std::move(c.image), std::move(c.gt)};
        rec.seed = seed;
        break;
      }
    }
    char name[40];
    std::snprintf(name, sizeof name, "frames/%06zu.png", k);
    imaging::write_png(frame.image, o.out / name);
    rec.image = name;
    rec.width = frame.image.width();
    rec.height = frame.image.height();
    rec.robots = frame.gt;
    rec.tags["augment"] = variant_tag(v);
    out.frames[k] = std::move(rec);

    if (!o.stage2_out) return;
    const std::uint64_t crop_seed = compose::derive_seed(o.seed, 2 * k + 1);
    for (std::size_t r = 0; r < frame.gt.size(); ++r) {
      const auto& robot = frame.gt[r];
      const auto crop = compose::crop_with_variance(frame.image, robot.bbox, o.variance_low,
                                                    o.variance_high,
                                                    compose::derive_seed(crop_seed, r));
      char crop_name[64];
      std::snprintf(crop_name, sizeof crop_name, "%06zu_%02zu.png", k, r);
      const fs::path rel = fs::path(robot.robot_type) / robot.instance_id / crop_name;
      imaging::write_png(crop.image, *o.stage2_out / rel);
      labels[k].push_back({rel.generic_string(), robot, crop.box});
    }
  });

  if (o.stage2_out) {
    std::string text;
    for (const auto& frame_labels : labels) {
      for (const auto& l : frame_labels) {
        json j;
        j["image"] = l.image;
        j["type"] = l.robot.robot_type;
        j["id"] = l.robot.instance_id;
        j["orientation"] = l.robot.orientation;
        j["box"] = {l.box.x_min(), l.box.y_min(), l.box.x_max(), l.box.y_max()};
        text += j.dump() + "\n";
      }
    }
    dataset::write_file_atomic(*o.stage2_out / "labels.jsonl", text);
  }

  json params;
  params["source"] = source.meta.spec_hash;
  params["keep_original"] = o.keep_original;
  params["flips"] = json::array();
  for (const auto axis : o.flips) {
    params["flips"].push_back(axis == compose::FlipAxis::kHorizontal ? "horizontal" : "vertical");
  }
  params["ssd_crops"] = o.ssd_crops;
  params["variance"] = {o.variance_low, o.variance_high};
  params["seed"] = o.seed;
  out.meta.spec_hash = dataset::sha256_hex(params.dump());
  out.meta.seed = o.seed;
  out.meta.counts = dataset::recount(out.frames);
  dataset::write_manifest(out, o.out / "manifest.jsonl");
  return out;
}

const std::vector<std::string>& available_backends() {
  static const std::vector<std::string> names{"reference"};
  return names;
}

std::vector<pipeline::FrameResult> run_pipeline(const RunPipelineOptions& o) {
  const auto& names = available_backends();
  if (std::find(names.begin(), names.end(), o.backend) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("unknown backend '" + o.backend + "'; available backends: " + list);
  }
  o.settings.config.validate();
  if (!o.settings.reference) {
    throw ConfigError("the reference backend needs a 'reference' section in the pipeline config");
  }

  std::vector<fs::path> frames;
  if (fs::is_directory(o.input)) {
    frames = dataset::list_images(o.input);
  } else if (fs::is_regular_file(o.input)) {
    const auto manifest = dataset::read_manifest(o.input);
    for (const auto& f : manifest.frames) frames.push_back(o.input.parent_path() / f.image);
  } else {
    throw ConfigError("input " + o.input.string() + " is neither a manifest nor a directory");
  }

  std::vector<pipeline::FrameResult> results(frames.size());
  if (!frames.empty()) {
    const auto backends = pipeline::make_reference_backends(*o.settings.reference, o.settings.config);
    const auto view = backends.view();
    // frames run in parallel, each frame's stage 2 sequentially
    pipeline::PipelineConfig config = o.settings.config;
    config.threads = 1;
    parallel_for(frames.size(), o.threads, [&](std::size_t i) {
      const auto image = imaging::to_rgb(imaging::read_image(frames[i]));
      results[i] = {i, pipeline::run_two_stage(image, *backends.detector, view, config, i)};
    });
  }
  pipeline::write_results(results, o.results);
  return results;
}

metrics::EvalReport evaluate_files(const EvaluateOptions& o) {
  if (!(o.iou > 0.0) || o.iou > 1.0) throw ConfigError("--iou must lie in (0, 1]");
  const auto manifest = dataset::read_manifest(o.ground_truth);
  const auto results = pipeline::read_results(o.results);
  const auto report = metrics::evaluate(manifest, results, o.iou);
  if (o.report) dataset::write_file_atomic(*o.report, metrics::report_to_json(report));
  return report;
}

}  // namespace swarmloc::cli
