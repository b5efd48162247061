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
#include <optional>
#include <string>
#include <vector>

#include "swarmloc/compose/augment.hpp"
#include "swarmloc/compose/compositor.hpp"
#include "swarmloc/crops/extraction.hpp"
#include "swarmloc/dataset/manifest.hpp"
#include "swarmloc/metrics/evaluation.hpp"
#include "swarmloc/pipeline/config_io.hpp"
#include "swarmloc/pipeline/results_io.hpp"

namespace swarmloc::cli {

// Library entry points behind the subcommands. Each validates its whole
// input before touching the output location.

struct ExtractOptions {
  std::filesystem::path frames;
  std::optional<std::filesystem::path> background;  // automatic extraction
  std::optional<std::filesystem::path> mask;        // manual extraction
  std::filesystem::path out;
  std::string robot_type;
  std::string instance_id;
  crops::ExtractionParams params;
  /// Orientation the robot shows in the frames; crops are rotated to face 0.
  std::optional<double> align_deg;
};

struct ExtractSummary {
  std::vector<std::filesystem::path> written;
  std::vector<std::string> failures;  // "<frame>: <reason>"
};

/// Writes one crop per frame to `<out>/<type>/<id>/<frame stem>.png`. Frames
/// that fail are reported and skipped. Throws ConfigError unless exactly one
/// of background and mask is set, or when the frames directory holds no
/// images.
ExtractSummary extract_crops(const ExtractOptions& options);

struct ComposeOptions {
  compose::CompositionSpec spec;
  std::filesystem::path out;
  int threads = 0;
  /// Store the wall-clock creation time in the metadata (breaks byte
  /// reproducibility of the metadata file).
  bool timestamp = false;
};

dataset::DatasetManifest compose_dataset(const ComposeOptions& options);

/// Per-key usage counts with their spread.
std::string balance_report(const dataset::BalanceCounts& counts);

struct AugmentOptions {
  std::filesystem::path manifest;
  std::filesystem::path out;
  bool keep_original = true;
  std::vector<compose::FlipAxis> flips;
  int ssd_crops = 0;  // random crops per frame
  compose::SsdCropOptions ssd;
  /// When set, per-robot stage-2 training crops with box variance go here.
  std::optional<std::filesystem::path> stage2_out;
  double variance_low = -0.10;
  double variance_high = 0.15;
  std::uint64_t seed = 0;
  int threads = 0;
};

/// Writes `<out>/frames/*.png` and `<out>/manifest.jsonl`; stage-2 crops go
/// to `<stage2_out>/<type>/<id>/*.png` with labels in
/// `<stage2_out>/labels.jsonl`. Output depends only on the inputs and seed.
dataset::DatasetManifest augment_dataset(const AugmentOptions& options);

/// Backend names this build can run.
const std::vector<std::string>& available_backends();

struct RunPipelineOptions {
  /// A manifest file or a directory of images (sorted by name).
  std::filesystem::path input;
  pipeline::PipelineSettings settings;
  std::string backend = "reference";
  std::filesystem::path results;
  int threads = 0;
};

/// Runs both stages on every frame and writes the results file, frames in
/// input order. An empty input gives an empty results file.
std::vector<pipeline::FrameResult> run_pipeline(const RunPipelineOptions& options);

struct EvaluateOptions {
  std::filesystem::path ground_truth;  // manifest
  std::filesystem::path results;
  double iou = 0.5;
  std::optional<std::filesystem::path> report;  // JSON report
};

metrics::EvalReport evaluate_files(const EvaluateOptions& options);

}  // namespace swarmloc::cli
