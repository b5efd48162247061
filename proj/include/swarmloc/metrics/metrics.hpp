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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swarmloc/imaging/image.hpp"

namespace swarmloc::metrics {

using imaging::BBox;

/// Half-open pixel-area IoU; symmetric, 1 for identical boxes.
double iou(const BBox& a, const BBox& b);

struct ScoredBox {
  BBox bbox;
  double confidence = 0.0;
};

struct DetectionMatch {
  double confidence = 0.0;
  bool true_positive = false;
  std::optional<std::size_t> gt_index;
};

/// Single-class matching outcome. `detections` is in processing order
/// (descending confidence, ties by input order); `input_index` maps back.
struct MatchResult {
  std::vector<DetectionMatch> detections;
  std::vector<std::size_t> input_index;
  std::size_t gt_count = 0;

  std::size_t true_positives() const;
  /// Appends another image's matches (ground-truth indices stay per image).
  void append(const MatchResult& other);
};

/// Greedy VOC-style matching. Detections are visited by descending confidence
/// (stable on ties) and each claims the unclaimed ground truth of highest IoU
/// when that IoU reaches `iou_threshold`. Everything else, including a second
/// detection on an already claimed box, is a false positive. Equal IoUs go to
/// the lower ground-truth index.
MatchResult match_detections(std::span<const ScoredBox> detections,
                             std::span<const BBox> ground_truth,
                             double iou_threshold = 0.5);

/// All-points interpolated AP (VOC 2010+): the precision envelope
/// p(r) = max_{r' >= r} precision(r') integrated over every recall step.
/// Throws UndefinedAp when the result has no ground truth.
double average_precision(const MatchResult& match);

/// Unweighted mean; throws InvalidArgument for an empty map.
double mean_ap(const std::map<std::string, double>& per_class_ap);

/// Circular distance in [0, 180]. Throws InvalidArgument on non-finite input.
double smallest_angle_diff(double a_deg, double b_deg);

/// Signed circular difference a - b wrapped onto (-180, 180].
double signed_angle_diff(double a_deg, double b_deg);

/// Mean smallest_angle_diff over (predicted, true) pairs. Throws
/// InvalidArgument for an empty list.
double orientation_mae(std::span<const std::pair<double, double>> pairs);

/// Squared smallest angle difference, for continuous orientation heads.
double angular_mse_loss(double predicted_deg, double true_deg);
/// Derivative of angular_mse_loss with respect to the prediction.
double angular_mse_gradient(double predicted_deg, double true_deg);

/// Share of exact id matches over (predicted, true) pairs. Throws
/// InvalidArgument for an empty list.
double identification_accuracy(std::span<const std::pair<std::string, std::string>> pairs);

/// run length -> number of maximal runs of consecutive `false` entries.
using RunLengthHistogram = std::map<std::size_t, std::size_t>;

RunLengthHistogram wrong_run_lengths(std::span<const bool> correct);
/// Adds the runs of `correct` into `histogram`.
void accumulate_wrong_runs(std::span<const bool> correct, RunLengthHistogram& histogram);

}  // namespace swarmloc::metrics
