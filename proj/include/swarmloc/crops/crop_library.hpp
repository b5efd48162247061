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
#include <string>
#include <vector>

#include "swarmloc/crops/extraction.hpp"

namespace swarmloc::crops {

/// Robot crops indexed by type, then instance id. std::map keeps iteration
/// order deterministic.
struct CropLibrary {
  std::map<std::string, std::map<std::string, std::vector<RobotCrop>>> crops;

  void add(RobotCrop crop) {
    auto& bucket = crops[crop.robot_type][crop.instance_id];
    bucket.push_back(std::move(crop));
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [type, ids] : crops) {
      for (const auto& [id, list] : ids) n += list.size();
    }
    return n;
  }

  bool empty() const { return size() == 0; }
};

}  // namespace swarmloc::crops
