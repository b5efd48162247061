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
#include <string_view>

#include "swarmloc/compose/compositor.hpp"

namespace swarmloc::compose {

/// JSON form of a spec. Keys: backgrounds, crops, decoys, frames,
/// robots_per_frame [min,max], scale_range [min,max], seed, balance
/// {backgrounds,types,instances}, decoys_per_frame, random_rotation,
/// min_on_canvas, allow_robot_overlap, clearance, max_placement_attempts.
std::string composition_spec_to_json(const CompositionSpec& spec);

/// Missing keys keep their defaults. Relative paths are resolved against
/// `base_dir`. Throws ConfigError on malformed input.
CompositionSpec composition_spec_from_json(std::string_view text,
                                           const std::filesystem::path& base_dir = {});

CompositionSpec read_composition_spec(const std::filesystem::path& path);

}  // namespace swarmloc::compose
