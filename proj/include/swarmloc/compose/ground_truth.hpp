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

#include <string>

#include "swarmloc/imaging/image.hpp"

namespace swarmloc::compose {

/// Label of one robot pasted into a frame.
struct GroundTruthRecord {
  std::string robot_type;
  std::string instance_id;
  imaging::BBox bbox;        // frame pixels, clipped
  double orientation = 0.0;  // degrees CCW, [0, 360)
  double visibility = 1.0;   // share of the paste not covered later

  friend bool operator==(const GroundTruthRecord&,
                         const GroundTruthRecord&) = default;
};

}  // namespace swarmloc::compose
