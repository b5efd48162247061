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
#include "swarmloc/pipeline/types.hpp"

namespace swarmloc::pipeline {

/// Expected blob shape of one robot type in stage-1 pixels.
struct SizePrior {
  std::string robot_type;
  double min_area = 0;
  double max_area = 0;
  double min_elongation = 1.0;
  double max_elongation = 1.0;
};

struct ReferenceDetectorParams {
  crops::ExtractionParams mask;
  std::size_t min_component_area = 4;
  double min_confidence = 0.05;
};

/// Classical stand-in for a CNN detector: background subtraction, mask
/// refinement and 8-connected components, each component classified by
/// comparing its area and elongation against the size priors.
///
/// Confidence is 1 inside a prior's ranges and decays as exp(-4 d) with the
/// summed log-distance d outside them. Components below min_confidence are
/// dropped. Output is sorted by descending confidence, then by (y, x) of the
/// box corner.
class ReferenceDetector final : public DetectorBackend {
 public:
  ReferenceDetector(Image background, std::vector<SizePrior> priors,
                    ReferenceDetectorParams params = {});

  std::vector<Detection> detect(const Image& frame) const override;

 private:
  Image background_;
  std::vector<SizePrior> priors_;
  ReferenceDetectorParams params_;
};

/// Free-function form: `background` must match the frame's dimensions.
std::vector<Detection> reference_detector(const Image& frame, const Image& background,
                                          const std::vector<SizePrior>& priors,
                                          const ReferenceDetectorParams& params = {});

/// Pre-rendered rotation sweep of canonically aligned templates for one robot
/// type. Each (instance, angle) hypothesis is rendered exactly like a stage-2
/// input (tight box, centered on a square, resized), and only its fully
/// opaque pixels take part in matching. Templates and crops are both lightly
/// smoothed before comparison.
class RotationTemplateSet {
 public:
  RotationTemplateSet(const std::map<std::string, Image>& templates, double step_deg,
                      int input_size);

  struct Hypothesis {
    std::string instance_id;
    double angle_deg = 0;
    int step = 0;  // angle_deg = step * step_deg
    std::vector<std::uint32_t> pixels;  // y * input_size + x of usable pixels
    std::vector<float> values;          // RGB per pixel, zero-mean, unit-norm
    // every other row and column of the above, for the coarse sweep
    std::vector<std::uint32_t> coarse_pixels;
    std::vector<float> coarse_values;
  };

  const std::vector<Hypothesis>& hypotheses() const { return hypotheses_; }
  double step_deg() const { return step_deg_; }
  /// Number of rotation steps per instance.
  int steps() const { return steps_; }
  /// True when the sweep closes on itself (step divides 360).
  bool wraps() const { return wraps_; }
  int input_size() const { return input_size_; }
  bool empty() const { return hypotheses_.empty(); }

 private:
  std::vector<Hypothesis> hypotheses_;
  double step_deg_;
  int input_size_;
  int steps_ = 1;
  bool wraps_ = false;
};

struct MatchScore {
  PoseEstimate pose;
  double best = 0;     // NCC of the winner
  double runner_up = 0;  // best NCC among other instances
};

/// Normalized cross-correlation over every (instance, angle) hypothesis,
/// sampled on every other row and column. Ties keep the lexicographically
/// smaller id, then the smaller angle. The winning
/// id's angles within two steps of its best are then rescored, each at its
/// best sub-pixel shift and zoom of the crop, which absorbs small bounding
/// box errors. With `interpolate`, the final angle is refined by a parabola
/// through the rescored neighbours (at most half a step either way).
/// Throws ConfigError when the template set is empty.
MatchScore match_templates(const Image& crop, const RotationTemplateSet& templates,
                           bool interpolate = true);

/// PoseEstimate of the best match; id_confidence is the winning NCC mapped
/// from [-1, 1] onto [0, 1].
PoseEstimate reference_second_stage(const Image& crop, const RotationTemplateSet& templates,
                                    bool interpolate = true);

class ReferenceSecondStage final : public SecondStageBackend {
 public:
  explicit ReferenceSecondStage(RotationTemplateSet templates, bool interpolate = true)
      : templates_(std::move(templates)), interpolate_(interpolate) {}

  PoseEstimate estimate(const Image& crop, const std::string& robot_type) const override;

 private:
  RotationTemplateSet templates_;
  bool interpolate_;
};

}  // namespace swarmloc::pipeline
