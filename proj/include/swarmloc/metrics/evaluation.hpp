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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swarmloc/dataset/manifest.hpp"
#include "swarmloc/metrics/metrics.hpp"
#include "swarmloc/pipeline/results_io.hpp"

namespace swarmloc::metrics {

struct ClassCounts {
  std::size_t ground_truth = 0;
  std::size_t detections = 0;
  std::size_t true_positives = 0;
};

/// Whole-framework evaluation of pipeline results against a manifest.
///
/// Detection AP is reported twice: per robot type, and per (type, instance)
/// class keyed "<type>/<id>", where a detection only counts when both its type
/// and its id are right. Classes without ground truth are left out. Id
/// accuracy and orientation MAE are taken over the true positives of the
/// per-type matching. A robot's frame is "wrong" for the run-length histogram
/// when no per-type true positive with the correct id covers it.
struct EvalReport {
  double iou_threshold = 0.5;
  std::size_t frames = 0;
  std::map<std::string, double> type_ap;
  std::map<std::string, ClassCounts> type_counts;
  std::optional<double> type_map;
  std::map<std::string, double> instance_ap;
  std::map<std::string, ClassCounts> instance_counts;
  std::optional<double> instance_map;
  std::optional<double> identification_accuracy;
  std::optional<double> orientation_mae;
  RunLengthHistogram wrong_runs;
};

/// Results must cover frames 0..N-1 of the manifest exactly once each;
/// otherwise ValidationError lists the missing and unexpected indices.
EvalReport evaluate(const dataset::DatasetManifest& manifest,
                    const std::vector<pipeline::FrameResult>& results,
                    double iou_threshold = 0.5);

std::string report_to_json(const EvalReport& report);
std::string report_table(const EvalReport& report);

}  // namespace swarmloc::metrics
