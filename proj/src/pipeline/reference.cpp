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

#include "swarmloc/pipeline/reference.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>

#include "swarmloc/angles.hpp"
#include "swarmloc/crops/morphology.hpp"
#include "swarmloc/errors.hpp"
#include "swarmloc/imaging/ops.hpp"
#include "swarmloc/pipeline/geometry.hpp"

namespace swarmloc::pipeline {

namespace {

// Log-distance of v from [lo, hi], 0 inside.
double range_distance(double v, double lo, double hi) {
  if (v < lo) return std::log(lo / std::max(v, 1e-9));
  if (v > hi) return std::log(v / hi);
  return 0.0;
}

double prior_score(const crops::Component& c, const SizePrior& p) {
  const double d = range_distance(static_cast<double>(c.area), p.min_area, p.max_area) +
                   range_distance(c.elongation(), p.min_elongation, p.max_elongation);
  return std::exp(-4.0 * d);
}

constexpr std::uint8_t kOpaque = 250;

// Separable [1 4 6 4 1] / 16 smoothing of the first three channels, clamped
// at the borders. Smoothing makes the match score vary smoothly with
// sub-pixel misalignment.
Image smooth_rgb(const Image& src) {
  constexpr int kTaps[5] = {1, 4, 6, 4, 1};
  const int w = src.width();
  const int h = src.height();
  std::vector<int> tmp(static_cast<std::size_t>(w) * h * 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        int acc = 0;
        for (int k = -2; k <= 2; ++k) {
          acc += kTaps[k + 2] * src.at(std::clamp(x + k, 0, w - 1), y, c);
        }
        tmp[(static_cast<std::size_t>(y) * w + x) * 3 + c] = acc;
      }
    }
  }
  Image out = src;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        int acc = 0;
        for (int k = -2; k <= 2; ++k) {
          const auto row = static_cast<std::size_t>(std::clamp(y + k, 0, h - 1));
          acc += kTaps[k + 2] * tmp[(row * w + x) * 3 + c];
        }
        out.at(x, y, c) = static_cast<std::uint8_t>((acc + 128) / 256);
      }
    }
  }
  return out;
}

// Zero mean, unit norm.
void normalize_template(std::vector<float>& values) {
  double sum = 0;
  for (const float v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double norm = 0;
  for (auto& v : values) {
    v = static_cast<float>(v - mean);
    norm += static_cast<double>(v) * v;
  }
  norm = std::sqrt(norm);
  for (auto& v : values) v = norm > 0 ? static_cast<float>(v / norm) : 0.0f;
}

// Angle steps either side of the coarse winner that get rescored.
constexpr int kRefineSteps = 2;
// Alignment search, in stage-2 pixels and relative zoom.
constexpr double kAlignShift = 1.0;
constexpr double kAlignMinShift = 0.125;
constexpr double kAlignMaxShift = 6.0;
constexpr double kAlignZoom = 0.02;
constexpr double kAlignMaxLogZoom = 0.1;
// First step, relative to the above, when starting from a known alignment.
constexpr double kAlignSeeded = 0.25;

}  // namespace

std::vector<Detection> reference_detector(const Image& frame, const Image& background,
                                          const std::vector<SizePrior>& priors,
                                          const ReferenceDetectorParams& params) {
  const auto mask = crops::refine_mask(
      crops::background_subtract_mask(frame, background, params.mask.threshold),
      params.mask.open_radius, params.mask.close_radius);
  const auto labeling = crops::label_components(mask);
  std::vector<Detection> out;
  for (const auto& comp : labeling.components) {
    if (comp.area < params.min_component_area) continue;
    const SizePrior* best = nullptr;
    double best_score = -1;
    for (const auto& p : priors) {
      const double s = prior_score(comp, p);
      if (s > best_score) {
        best_score = s;
        best = &p;
      }
    }
    if (best == nullptr || best_score < params.min_confidence) continue;
    out.push_back({best->robot_type, comp.bbox, std::clamp(best_score, 0.0, 1.0), {}});
  }
  std::stable_sort(out.begin(), out.end(), [](const Detection& a, const Detection& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.bbox.y_min() != b.bbox.y_min()) return a.bbox.y_min() < b.bbox.y_min();
    return a.bbox.x_min() < b.bbox.x_min();
  });
  return out;
}

ReferenceDetector::ReferenceDetector(Image background, std::vector<SizePrior> priors,
                                     ReferenceDetectorParams params)
    : background_(imaging::to_rgb(background)), priors_(std::move(priors)),
      params_(params) {
  if (priors_.empty()) throw ConfigError("reference detector needs at least one size prior");
}

std::vector<Detection> ReferenceDetector::detect(const Image& frame) const {
  if (frame.width() == background_.width() && frame.height() == background_.height()) {
    return reference_detector(frame, background_, priors_, params_);
  }
  return reference_detector(frame, downsample(background_, {frame.width(), frame.height()}),
                            priors_, params_);
}

RotationTemplateSet::RotationTemplateSet(const std::map<std::string, Image>& templates,
                                         double step_deg, int input_size)
    : step_deg_(step_deg), input_size_(input_size) {
  if (!(step_deg > 0) || step_deg > 360) throw ConfigError("rotation step must lie in (0, 360]");
  if (input_size < 2) throw ConfigError("stage-2 input size must be >= 2");
  const int steps = std::max(1, static_cast<int>(std::ceil(360.0 / step_deg - 1e-9)));
  steps_ = steps;
  wraps_ = std::abs(steps * step_deg - 360.0) < 1e-9;
  for (const auto& [id, tmpl] : templates) {
    if (!tmpl.has_alpha()) throw ConfigError("template '" + id + "' has no alpha channel");
    for (int k = 0; k < steps; ++k) {
      const double angle = normalize_degrees(k * step_deg);
      const Image sprite = crops::retighten(imaging::transform_rgba(tmpl, 1.0, angle));
      const int side = std::max(sprite.width(), sprite.height());
      Image canvas(side, side, 4);
      for (int y = 0; y < sprite.height(); ++y) {
        std::copy_n(sprite.pixel(0, y), static_cast<std::size_t>(sprite.width()) * 4,
                    canvas.pixel((side - sprite.width()) / 2, (side - sprite.height()) / 2 + y));
      }
      const Image sharp = imaging::resize(canvas, {input_size, input_size});
      const Image rendered = smooth_rgb(sharp);
      // a pixel is usable when its whole smoothing window is opaque
      imaging::BinaryMask opaque(input_size, input_size);
      for (int y = 0; y < input_size; ++y) {
        for (int x = 0; x < input_size; ++x) opaque.set(x, y, sharp.at(x, y, 3) >= kOpaque);
      }
      const imaging::BinaryMask usable = crops::erode(opaque, 2);

      Hypothesis h;
      h.instance_id = id;
      h.angle_deg = angle;
      h.step = k;
      for (int y = 0; y < input_size; ++y) {
        for (int x = 0; x < input_size; ++x) {
          if (!usable.get(x, y)) continue;
          const auto px = static_cast<std::uint32_t>(y * input_size + x);
          const std::uint8_t* p = rendered.pixel(x, y);
          h.pixels.push_back(px);
          h.values.insert(h.values.end(), {float(p[0]), float(p[1]), float(p[2])});
          if (x % 2 == 0 && y % 2 == 0) {
            h.coarse_pixels.push_back(px);
            h.coarse_values.insert(h.coarse_values.end(), {float(p[0]), float(p[1]), float(p[2])});
          }
        }
      }
      if (h.coarse_values.empty()) continue;
      normalize_template(h.values);
      normalize_template(h.coarse_values);
      hypotheses_.push_back(std::move(h));
    }
  }
}

namespace {

using Hypothesis = RotationTemplateSet::Hypothesis;

double ncc_from_sums(double tc, double sc, double scc, std::size_t m) {
  const double var = scc - sc * sc / static_cast<double>(m);
  return var > 1e-9 ? tc / std::sqrt(var) : 0.0;
}

// Coarse masked NCC against the n x n RGB crop, template pixel i over crop
// pixel i.
double coarse_ncc(const Hypothesis& h, const float* rgb) {
  float tc = 0, sc = 0, scc = 0;
  const float* t = h.coarse_values.data();
  for (const std::uint32_t px : h.coarse_pixels) {
    const float* p = rgb + static_cast<std::size_t>(px) * 3;
    for (int c = 0; c < 3; ++c) {
      const float v = p[c];
      tc += t[c] * v;
      sc += v;
      scc += v * v;
    }
    t += 3;
  }
  return ncc_from_sums(tc, sc, scc, h.coarse_values.size());
}

// Alignment of a template against the crop: template point p samples the crop
// at centre + (p - centre) * zoom + offset.
struct Alignment {
  double dx = 0;
  double dy = 0;
  double zoom = 1;
};

// Same score with the crop sampled bilinearly under `a`.
double aligned_ncc(std::span<const std::uint32_t> pixels, std::span<const float> values,
                   const float* rgb, int n, const Alignment& a) {
  const float centre = 0.5f * static_cast<float>(n);
  const auto zoom = static_cast<float>(a.zoom);
  const float ox = centre * (1 - zoom) + static_cast<float>(a.dx) - 0.5f;
  const float oy = centre * (1 - zoom) + static_cast<float>(a.dy) - 0.5f;
  const float hi = static_cast<float>(n) - 1.0f;
  double tc = 0, sc = 0, scc = 0;
  const float* t = values.data();
  for (const std::uint32_t px : pixels) {
    const auto x = static_cast<float>(px % static_cast<std::uint32_t>(n));
    const auto y = static_cast<float>(px / static_cast<std::uint32_t>(n));
    const float fx = std::clamp(ox + (x + 0.5f) * zoom, 0.0f, hi);
    const float fy = std::clamp(oy + (y + 0.5f) * zoom, 0.0f, hi);
    const int x0 = std::min(static_cast<int>(fx), n - 2);
    const int y0 = std::min(static_cast<int>(fy), n - 2);
    const float wx = fx - static_cast<float>(x0);
    const float wy = fy - static_cast<float>(y0);
    const float* p00 = rgb + (static_cast<std::size_t>(y0) * n + x0) * 3;
    const float* p01 = p00 + static_cast<std::size_t>(n) * 3;
    for (int c = 0; c < 3; ++c) {
      const float top = p00[c] + (p00[c + 3] - p00[c]) * wx;
      const float bottom = p01[c] + (p01[c + 3] - p01[c]) * wx;
      const float v = top + (bottom - top) * wy;
      tc += t[c] * v;
      sc += v;
      scc += v * v;
    }
    t += 3;
  }
  return ncc_from_sums(tc, sc, scc, values.size());
}

struct Aligned {
  double score = -2;
  Alignment at;
};

// Pattern search for the best alignment of one template, starting from
// `start` with the given first step (a fraction of the full step sizes). The
// search runs on the coarse pixel subset; the returned score uses them all.
Aligned best_alignment(const Hypothesis& h, const float* rgb, int n, Alignment start = {},
                       double first_step = 1.0) {
  const auto coarse = [&](const Alignment& a) {
    return aligned_ncc(h.coarse_pixels, h.coarse_values, rgb, n, a);
  };
  Alignment at = start;
  double score = coarse(at);
  double shift = kAlignShift * first_step;
  double zoom = kAlignZoom * first_step;
  while (shift >= kAlignMinShift) {
    bool moved = false;
    const Alignment probes[6] = {
        {at.dx + shift, at.dy, at.zoom}, {at.dx - shift, at.dy, at.zoom},
        {at.dx, at.dy + shift, at.zoom}, {at.dx, at.dy - shift, at.zoom},
        {at.dx, at.dy, at.zoom * (1 + zoom)}, {at.dx, at.dy, at.zoom / (1 + zoom)},
    };
    for (const auto& p : probes) {
      if (std::abs(p.dx) > kAlignMaxShift || std::abs(p.dy) > kAlignMaxShift ||
          std::abs(std::log(p.zoom)) > kAlignMaxLogZoom) {
        continue;
      }
      const double s = coarse(p);
      if (s > score) {
        score = s;
        at = p;
        moved = true;
      }
    }
    if (!moved) {
      shift *= 0.5;
      zoom *= 0.5;
    }
  }
  return {aligned_ncc(h.pixels, h.values, rgb, n, at), at};
}

}  // namespace

MatchScore match_templates(const Image& crop, const RotationTemplateSet& templates,
                           bool interpolate) {
  if (templates.empty()) throw ConfigError("empty template set");
  const int n = templates.input_size();
  const Image rgb = smooth_rgb((crop.width() == n && crop.height() == n)
                                   ? imaging::to_rgb(crop)
                                   : imaging::resize(imaging::to_rgb(crop), {n, n}));
  const auto& hyps = templates.hypotheses();
  const std::vector<float> flat(rgb.data().begin(), rgb.data().end());

  // Coarse sweep over every hypothesis with the crop taken as it is.
  std::vector<double> scores;
  scores.reserve(hyps.size());
  std::size_t best = 0;
  double best_score = -2;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const double score = coarse_ncc(hyps[i], flat.data());
    if (score > best_score) {
      best_score = score;
      best = i;
    }
    scores.push_back(score);
  }
  const std::string& id = hyps[best].instance_id;
  double runner_up = -1;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (hyps[i].instance_id != id) runner_up = std::max(runner_up, scores[i]);
  }

  const int steps = templates.steps();
  std::vector<const Hypothesis*> by_step(static_cast<std::size_t>(steps), nullptr);
  for (const auto& h : hyps) {
    if (h.instance_id == id) by_step[static_cast<std::size_t>(h.step)] = &h;
  }
  const auto neighbour = [&](int step, int d) -> const Hypothesis* {
    int k = step + d;
    if (templates.wraps()) {
      k = ((k % steps) + steps) % steps;
    } else if (k < 0 || k >= steps) {
      return nullptr;
    }
    return by_step[static_cast<std::size_t>(k)];
  };

  // Fine search: the winning id's nearby angles, each at its best sub-pixel
  // alignment, so small box errors do not bias the angle. The alignment found
  // for the coarse winner seeds a short search at the other angles.
  const int centre = hyps[best].step;
  const Aligned seed = best_alignment(hyps[best], flat.data(), n);
  std::map<int, double> fine;  // offset from centre -> aligned score
  const auto score_at = [&](int d) {
    if (d == 0) return seed.score;
    return best_alignment(*neighbour(centre, d), flat.data(), n, seed.at, kAlignSeeded).score;
  };
  int best_d = 0;
  double fine_best = -2;
  for (int d = -kRefineSteps; d <= kRefineSteps; ++d) {
    if (neighbour(centre, d) == nullptr) continue;
    const double s = score_at(d);
    fine[d] = s;
    if (s > fine_best) {
      fine_best = s;
      best_d = d;
    }
  }
  // extend one step when the peak sits on the edge of the window
  for (const int d : {best_d - 1, best_d + 1}) {
    if (fine.count(d) != 0 || neighbour(centre, d) == nullptr) continue;
    fine[d] = score_at(d);
  }

  const Hypothesis* winner = neighbour(centre, best_d);
  double angle = winner->angle_deg;
  if (interpolate && steps > 2 && fine.count(best_d - 1) && fine.count(best_d + 1)) {
    const double lo = fine[best_d - 1];
    const double hi = fine[best_d + 1];
    const double denom = lo - 2.0 * fine_best + hi;
    if (denom < 0) {
      const double offset = std::clamp(0.5 * (lo - hi) / denom, -0.5, 0.5);
      angle = normalize_degrees(angle + offset * templates.step_deg());
    }
  }

  MatchScore result;
  result.best = std::max(best_score, fine_best);
  result.runner_up = runner_up;
  result.pose.instance_id = id;
  result.pose.orientation_deg = angle;
  result.pose.orientation_bin = bin_orientation(angle);
  result.pose.id_confidence = std::clamp(0.5 * (result.best + 1.0), 0.0, 1.0);
  return result;
}

PoseEstimate reference_second_stage(const Image& crop, const RotationTemplateSet& templates,
                                    bool interpolate) {
  return match_templates(crop, templates, interpolate).pose;
}

PoseEstimate ReferenceSecondStage::estimate(const Image& crop, const std::string&) const {
  return reference_second_stage(crop, templates_, interpolate_);
}

}  // namespace swarmloc::pipeline
