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

#include "swarmloc/cli/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "swarmloc/compose/compositor.hpp"
#include "swarmloc/compose/rng.hpp"
#include "swarmloc/dataset/crop_library_io.hpp"
#include "swarmloc/errors.hpp"
#include "swarmloc/imaging/io.hpp"
#include "swarmloc/imaging/ops.hpp"
#include "swarmloc/parallel.hpp"
#include "swarmloc/pipeline/geometry.hpp"
#include "swarmloc/pipeline/two_stage.hpp"

namespace swarmloc::cli {

using json = nlohmann::ordered_json;

namespace {

LatencyStat summarize(const std::vector<double>& ms) {
  LatencyStat s;
  for (const double v : ms) s.mean_ms += v;
  s.mean_ms /= static_cast<double>(ms.size());
  if (ms.size() > 1) {
    double ss = 0;
    for (const double v : ms) ss += (v - s.mean_ms) * (v - s.mean_ms);
    s.std_ms = std::sqrt(ss / static_cast<double>(ms.size() - 1));
  }
  return s;
}

// Each run times every case once, round-robin, so slow drift in machine load
// is shared by all cases instead of landing on one of them.
std::vector<LatencyStat> measure(int runs, const std::vector<std::function<void()>>& cases) {
  for (const auto& fn : cases) fn();  // warm-up
  std::vector<std::vector<double>> ms(cases.size());
  for (int r = 0; r < runs; ++r) {
    for (std::size_t c = 0; c < cases.size(); ++c) {
      const auto t0 = std::chrono::steady_clock::now();
      cases[c]();
      const auto t1 = std::chrono::steady_clock::now();
      ms[c].push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
  }
  std::vector<LatencyStat> out;
  for (const auto& m : ms) out.push_back(summarize(m));
  return out;
}

// Priors are stated for the configured stage-1 resolution; areas scale with
// the pixel count.
std::vector<pipeline::SizePrior> scale_priors(std::vector<pipeline::SizePrior> priors,
                                              imaging::Size from, imaging::Size to) {
  const double f = static_cast<double>(to.width) * to.height /
                   (static_cast<double>(from.width) * from.height);
  for (auto& p : priors) {
    p.min_area *= f;
    p.max_area *= f;
  }
  return priors;
}

json stat_json(const LatencyStat& s) {
  json j;
  j["mean_ms"] = s.mean_ms;
  if (s.std_ms) j["std_ms"] = *s.std_ms;
  return j;
}

std::string stat_text(const LatencyStat& s) {
  char buf[64];
  if (s.std_ms) {
    std::snprintf(buf, sizeof buf, "%10.2f +- %.2f", s.mean_ms, *s.std_ms);
  } else {
    std::snprintf(buf, sizeof buf, "%10.2f", s.mean_ms);
  }
  return buf;
}

}  // namespace

imaging::Size parse_resolution(const std::string& text) {
  int w = 0;
  int h = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%dx%d%c", &w, &h, &tail) != 2 || w <= 0 || h <= 0) {
    throw ConfigError("resolution '" + text + "' is not of the form WIDTHxHEIGHT");
  }
  return {w, h};
}

BenchReport run_bench(const BenchOptions& o) {
  if (o.runs < 1) throw ConfigError("bench needs at least one run");
  if (o.robots_min < 1 || o.robots_max < o.robots_min) {
    throw ConfigError("robot counts need 1 <= min <= max");
  }
  if (o.resolutions.empty()) throw ConfigError("bench needs at least one resolution");
  for (const auto& r : o.resolutions) {
    if (r.width <= 0 || r.height <= 0) throw ConfigError("resolutions must be positive");
  }
  o.settings.config.validate();
  if (!o.settings.reference) {
    throw ConfigError("bench needs a 'reference' section in the pipeline config");
  }
  const auto& ref = *o.settings.reference;
  const auto backends = pipeline::make_reference_backends(ref, o.settings.config);
  const auto view = backends.view();
  const auto background = imaging::to_rgb(imaging::read_image(ref.background));

  compose::CompositionSpec spec;
  spec.frame_count = 1;
  spec.scale_range = {1.0, 1.0};
  spec.min_on_canvas = 1.0;
  spec.allow_robot_overlap = false;
  compose::CompositionAssets assets;
  assets.backgrounds.push_back({"bench", {background}});
  assets.crops = dataset::load_crop_library(ref.templates).library;

  spec.robots_per_frame = {o.robots_max, o.robots_max};
  spec.seed = o.seed;
  const auto busy = compose::Compositor(spec, assets).compose_frame(0);

  // Frames for smaller counts keep the first robots of the busy layout, so
  // the robot count is the only thing that changes between measurements.
  const auto frame_with = [&](int robots) {
    compose::ComposedFrame f;
    f.image = background;
    for (int i = 0; i < robots; ++i) {
      const auto& p = busy.robot_pastes[static_cast<std::size_t>(i)];
      imaging::alpha_composite_inplace(f.image, p.sprite, p.top_left);
      f.robots.push_back(busy.robots[static_cast<std::size_t>(i)]);
    }
    return f;
  };

  BenchReport report;
  report.runs = o.runs;
  report.threads = o.threads;
  report.frame_size = {background.width(), background.height()};

  std::vector<pipeline::ReferenceDetector> detectors;
  for (const auto& r : o.resolutions) {
    detectors.emplace_back(pipeline::downsample(background, r),
                           scale_priors(ref.priors, o.settings.config.stage1_resolution, r),
                           ref.detector);
  }
  std::vector<std::function<void()>> stage1;
  for (std::size_t k = 0; k < o.resolutions.size(); ++k) {
    stage1.push_back([&, k] {
      const auto small = pipeline::downsample(busy.image, o.resolutions[k]);
      (void)detectors[k].detect(small);
    });
  }
  const auto stage1_stats = measure(o.runs, stage1);
  for (std::size_t k = 0; k < o.resolutions.size(); ++k) {
    report.stage1.emplace_back(o.resolutions[k], stage1_stats[k]);
  }

  const int side = o.settings.config.stage2_input;
  std::vector<compose::ComposedFrame> frames;
  for (int k = o.robots_min; k <= o.robots_max; ++k) {
    frames.push_back(frame_with(k));
    for (const auto& robot : frames.back().robots) {
      if (view.count(robot.robot_type) == 0) {
        throw ConfigError("no second-stage head for robot type '" + robot.robot_type + "'");
      }
    }
  }
  std::vector<std::function<void()>> stage2;
  for (const auto& frame : frames) {
    stage2.push_back([&] {
      parallel_for(frame.robots.size(), o.threads, [&](std::size_t i) {
        const auto& robot = frame.robots[i];
        const auto crop = pipeline::prepare_stage2_crop(frame.image, robot.bbox, side);
        (void)view.at(robot.robot_type)->estimate(crop, robot.robot_type);
      });
    });
  }
  const auto stage2_stats = measure(o.runs, stage2);
  for (std::size_t k = 0; k < frames.size(); ++k) {
    report.stage2.emplace_back(o.robots_min + static_cast<int>(k), stage2_stats[k]);
  }
  return report;
}

std::string bench_to_json(const BenchReport& r) {
  json j;
  j["runs"] = r.runs;
  j["threads"] = r.threads;
  j["frame_size"] = {r.frame_size.width, r.frame_size.height};
  j["stage1"] = json::array();
  for (const auto& [size, s] : r.stage1) {
    json e = stat_json(s);
    e["resolution"] = {size.width, size.height};
    j["stage1"].push_back(std::move(e));
  }
  j["stage2"] = json::array();
  for (const auto& [robots, s] : r.stage2) {
    json e = stat_json(s);
    e["robots"] = robots;
    j["stage2"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string bench_table(const BenchReport& r) {
  std::ostringstream out;
  char buf[96];
  std::snprintf(buf, sizeof buf, "frame %dx%d, %d runs, %d threads\n\n", r.frame_size.width,
                r.frame_size.height, r.runs, r.threads);
  out << buf;
  out << "stage 1        latency ms\n";
  for (const auto& [size, s] : r.stage1) {
    std::snprintf(buf, sizeof buf, "%4dx%-9d %s\n", size.width, size.height, stat_text(s).c_str());
    out << buf;
  }
  out << "\nstage 2 robots latency ms\n";
  for (const auto& [robots, s] : r.stage2) {
    std::snprintf(buf, sizeof buf, "%14d %s\n", robots, stat_text(s).c_str());
    out << buf;
  }
  return out.str();
}

}  // namespace swarmloc::cli
