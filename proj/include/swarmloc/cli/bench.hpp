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
#include <optional>
#include <string>
#include <vector>

#include "swarmloc/pipeline/config_io.hpp"

namespace swarmloc::cli {

struct BenchOptions {
  pipeline::PipelineSettings settings;  // needs the reference section
  std::vector<imaging::Size> resolutions{{200, 150}, {400, 300}, {800, 600}};
  int robots_min = 1;
  int robots_max = 10;
  int runs = 100;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct LatencyStat {
  double mean_ms = 0;
  std::optional<double> std_ms;  // sample deviation, absent for a single run
};

struct BenchReport {
  int runs = 0;
  int threads = 1;
  imaging::Size frame_size;
  std::vector<std::pair<imaging::Size, LatencyStat>> stage1;
  std::vector<std::pair<int, LatencyStat>> stage2;
};

/// Times stage 1 (downsample and detect) per resolution on a synthetic frame
/// holding robots_max robots, and stage 2 (crop and estimate every robot) per
/// robot count on frames holding exactly that many robots. Frames are built
/// from the reference background and templates; smaller counts reuse the
/// first robots of one non-overlapping layout. Within a stage, each run
/// times every case once in turn, after one untimed warm-up pass.
BenchReport run_bench(const BenchOptions& options);

std::string bench_to_json(const BenchReport& report);
std::string bench_table(const BenchReport& report);

/// Parses "200x150".
imaging::Size parse_resolution(const std::string& text);

}  // namespace swarmloc::cli
