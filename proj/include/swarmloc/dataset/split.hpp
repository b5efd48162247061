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
#include <string>
#include <vector>

#include "swarmloc/dataset/manifest.hpp"

namespace swarmloc::dataset {

/// Stratum value of a frame for one key. Keys: "background", "types" (sorted
/// distinct robot types), "instances" (sorted distinct "<type>/<id>") and
/// "tag:<name>". Throws InvalidArgument for an unknown key.
std::string stratum_value(const FrameRecord& frame, const std::string& key);

struct StratifiedSplit {
  DatasetManifest selected;
  DatasetManifest rest;
};

/// Picks exactly `per_stratum` frames from every combination of stratum
/// values, deterministically for a given seed. Both halves keep the original
/// frame order and together hold every input frame once. Throws
/// InvalidArgument naming the first stratum with too few frames.
StratifiedSplit split_eval_set(const DatasetManifest& manifest,
                               const std::vector<std::string>& strata,
                               int per_stratum, std::uint64_t seed);

}  // namespace swarmloc::dataset
