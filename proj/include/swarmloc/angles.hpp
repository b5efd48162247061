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

#include <cmath>

namespace swarmloc {

/// Maps any finite angle in degrees onto [0, 360).
inline double normalize_degrees(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0) r += 360.0;
  // fmod of a tiny negative value can round up to exactly 360.
  if (r >= 360.0) r = 0.0;
  return r;
}

/// Rounds to 1/100 degree and wraps, the precision orientations are stored at.
inline double quantize_degrees(double deg) {
  return normalize_degrees(std::round(deg * 100.0) / 100.0);
}

}  // namespace swarmloc
