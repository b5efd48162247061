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

#include "swarmloc/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "swarmloc/angles.hpp"
#include "swarmloc/errors.hpp"

namespace swarmloc::metrics {

double iou(const BBox& a, const BBox& b) { return imaging::iou(a, b); }

std::size_t MatchResult::true_positives() const {
  return static_cast<std::size_t>(std::count_if(
      detections.begin(), detections.end(),
      [](const DetectionMatch& d) { return d.true_positive; }));
}

void MatchResult::append(const MatchResult& other) {
  const std::size_t base = input_index.size();
  detections.insert(detections.end(), other.detections.begin(), other.detections.end());
  for (auto i : other.input_index) input_index.push_back(base + i);
  gt_count += other.gt_count;
}

MatchResult match_detections(std::span<const ScoredBox> detections,
                             std::span<const BBox> ground_truth, double iou_threshold) {
  MatchResult out;
  out.gt_count = ground_truth.size();
  out.input_index.resize(detections.size());
  std::iota(out.input_index.begin(), out.input_index.end(), std::size_t{0});
  std::stable_sort(out.input_index.begin(), out.input_index.end(),
                   [&](std::size_t a, std::size_t b) {
                     return detections[a].confidence > detections[b].confidence;
                   });

  std::vector<bool> claimed(ground_truth.size(), false);
  for (const std::size_t i : out.input_index) {
    DetectionMatch m;
    m.confidence = detections[i].confidence;
    double best = -1;
    std::size_t best_gt = 0;
    for (std::size_t g = 0; g < ground_truth.size(); ++g) {
      if (claimed[g]) continue;
      const double o = imaging::iou(detections[i].bbox, ground_truth[g]);
      if (o > best) {
        best = o;
        best_gt = g;
      }
    }
    if (best >= iou_threshold) {
      claimed[best_gt] = true;
      m.true_positive = true;
      m.gt_index = best_gt;
    }
    out.detections.push_back(m);
  }
  return out;
}

double average_precision(const MatchResult& match) {
  if (match.gt_count == 0) throw UndefinedAp("average precision needs at least one ground truth");
  std::vector<std::size_t> order(match.detections.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return match.detections[a].confidence > match.detections[b].confidence;
  });

  const double total = static_cast<double>(match.gt_count);
  std::vector<double> recall;
  std::vector<double> precision;
  double tp = 0;
  double fp = 0;
  for (const auto k : order) {
    (match.detections[k].true_positive ? tp : fp) += 1;
    recall.push_back(tp / total);
    precision.push_back(tp / (tp + fp));
  }
  for (std::size_t i = precision.size(); i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  double ap = 0;
  double previous = 0;
  for (std::size_t i = 0; i < recall.size(); ++i) {
    if (recall[i] > previous) {
      ap += (recall[i] - previous) * precision[i];
      previous = recall[i];
    }
  }
  return ap;
}

double mean_ap(const std::map<std::string, double>& per_class_ap) {
  if (per_class_ap.empty()) throw InvalidArgument("mean AP of zero classes");
  double sum = 0;
  for (const auto& [name, ap] : per_class_ap) sum += ap;
  return sum / static_cast<double>(per_class_ap.size());
}

double smallest_angle_diff(double a_deg, double b_deg) {
  if (!std::isfinite(a_deg) || !std::isfinite(b_deg)) {
    throw InvalidArgument("angles must be finite");
  }
  const double d = normalize_degrees(a_deg - b_deg);
  return std::min(d, 360.0 - d);
}

double signed_angle_diff(double a_deg, double b_deg) {
  if (!std::isfinite(a_deg) || !std::isfinite(b_deg)) {
    throw InvalidArgument("angles must be finite");
  }
  const double d = normalize_degrees(a_deg - b_deg);
  return d > 180.0 ? d - 360.0 : d;
}

double orientation_mae(std::span<const std::pair<double, double>> pairs) {
  if (pairs.empty()) throw InvalidArgument("orientation MAE of zero pairs");
  double sum = 0;
  for (const auto& [predicted, truth] : pairs) sum += smallest_angle_diff(predicted, truth);
  return sum / static_cast<double>(pairs.size());
}

double angular_mse_loss(double predicted_deg, double true_deg) {
  const double d = smallest_angle_diff(predicted_deg, true_deg);
  return d * d;
}

double angular_mse_gradient(double predicted_deg, double true_deg) {
  return 2.0 * signed_angle_diff(predicted_deg, true_deg);
}

double identification_accuracy(std::span<const std::pair<std::string, std::string>> pairs) {
  if (pairs.empty()) throw InvalidArgument("identification accuracy of zero pairs");
  const auto hits = std::count_if(pairs.begin(), pairs.end(),
                                  [](const auto& p) { return p.first == p.second; });
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

void accumulate_wrong_runs(std::span<const bool> correct, RunLengthHistogram& histogram) {
  std::size_t run = 0;
  for (const bool ok : correct) {
    if (!ok) {
      ++run;
    } else if (run > 0) {
      ++histogram[run];
      run = 0;
    }
  }
  if (run > 0) ++histogram[run];
}

RunLengthHistogram wrong_run_lengths(std::span<const bool> correct) {
  RunLengthHistogram h;
  accumulate_wrong_runs(correct, h);
  return h;
}

}  // namespace swarmloc::metrics
