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

#include <filesystem>
#include <string>
#include <vector>

#include "swarmloc/pipeline/types.hpp"

namespace swarmloc::pipeline {

struct FrameResult {
  std::size_t frame = 0;
  std::vector<TrackedRobot> robots;
};

/// One JSON object per frame:
/// {"frame": n, "robots": [{"type", "id", "bbox", "orientation_deg",
///  "confidence", "id_confidence", "position_m"?}]}
std::string result_to_json_line(const FrameResult& result);
FrameResult result_from_json_line(const std::string& line, std::size_t line_no);

/// Atomic write, frames in the given order.
void write_results(const std::vector<FrameResult>& results,
                   const std::filesystem::path& path);
/// Throws ParseError with the line number on malformed input.
std::vector<FrameResult> read_results(const std::filesystem::path& path);

}  // namespace swarmloc::pipeline
