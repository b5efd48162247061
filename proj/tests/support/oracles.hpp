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

#include <vector>

#include "swarmloc/metrics/metrics.hpp"

namespace swarmloc::testing {

/// IoU by counting pixels of both boxes.
double pixel_iou(const imaging::BBox& a, const imaging::BBox& b);

struct OracleMatch {
  std::vector<bool> tp;  // in processing order
  double ap = 0;
};

/// Visits detections in descending confidence (input order on ties); each
/// one looks at every ground truth and takes the best unclaimed one by pixel
/// IoU. AP: every true positive adds 1/G times the best precision at its
/// rank or any later rank.
OracleMatch oracle_match(const std::vector<metrics::ScoredBox>& dets,
                         const std::vector<imaging::BBox>& gts, double threshold);

}  // namespace swarmloc::testing
