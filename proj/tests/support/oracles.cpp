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

#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace swarmloc::testing {

using imaging::BBox;

double pixel_iou(const BBox& a, const BBox& b) {
  long inter = 0, uni = 0;
  for (int y = std::min(a.y_min(), b.y_min()); y < std::max(a.y_max(), b.y_max()); ++y) {
    for (int x = std::min(a.x_min(), b.x_min()); x < std::max(a.x_max(), b.x_max()); ++x) {
      const bool ia = x >= a.x_min() && x < a.x_max() && y >= a.y_min() && y < a.y_max();
      const bool ib = x >= b.x_min() && x < b.x_max() && y >= b.y_min() && y < b.y_max();
      inter += ia && ib;
      uni += ia || ib;
    }
  }
  return static_cast<double>(inter) / static_cast<double>(uni);
}

OracleMatch oracle_match(const std::vector<metrics::ScoredBox>& dets,
                         const std::vector<BBox>& gts, double threshold) {
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dets[a].confidence > dets[b].confidence;
  });
  std::vector<bool> claimed(gts.size(), false);
  OracleMatch r;
  for (const std::size_t d : order) {
    int best = -1;
    double best_iou = -1;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (claimed[g]) continue;
      const double v = pixel_iou(dets[d].bbox, gts[g]);
      if (v > best_iou) {
        best_iou = v;
        best = static_cast<int>(g);
      }
    }
    const bool hit = best >= 0 && best_iou >= threshold;
    if (hit) claimed[static_cast<std::size_t>(best)] = true;
    r.tp.push_back(hit);
  }
  const std::size_t n = r.tp.size();
  std::vector<double> precision(n);
  std::size_t tps = 0;
  for (std::size_t k = 0; k < n; ++k) {
    tps += r.tp[k];
    precision[k] = static_cast<double>(tps) / static_cast<double>(k + 1);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!r.tp[k]) continue;
    r.ap += *std::max_element(precision.begin() + static_cast<long>(k), precision.end()) /
            static_cast<double>(gts.size());
  }
  return r;
}

}  // namespace swarmloc::testing
