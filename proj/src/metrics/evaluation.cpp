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

#include "swarmloc/metrics/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "swarmloc/errors.hpp"

namespace swarmloc::metrics {

namespace {

using json = nlohmann::ordered_json;

std::string instance_key(const std::string& type, const std::string& id) {
  return type + "/" + id;
}

std::string join_indices(const std::vector<std::size_t>& v) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(v.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  if (v.size() > shown) out += ", ... (" + std::to_string(v.size()) + " total)";
  return out;
}

// Aligns results to manifest frames; results[k] for frame k.
std::vector<const pipeline::FrameResult*> align(
    const dataset::DatasetManifest& manifest,
    const std::vector<pipeline::FrameResult>& results) {
  const std::size_t n = manifest.frames.size();
  std::vector<const pipeline::FrameResult*> by_frame(n, nullptr);
  std::vector<std::size_t> unexpected;
  std::vector<std::size_t> duplicate;
  for (const auto& r : results) {
    if (r.frame >= n) {
      unexpected.push_back(r.frame);
    } else if (by_frame[r.frame] != nullptr) {
      duplicate.push_back(r.frame);
    } else {
      by_frame[r.frame] = &r;
    }
  }
  std::vector<std::size_t> missing;
  for (std::size_t k = 0; k < n; ++k) {
    if (by_frame[k] == nullptr) missing.push_back(k);
  }
  if (missing.empty() && unexpected.empty() && duplicate.empty()) return by_frame;

  std::string msg = "results do not match the manifest frames";
  if (!missing.empty()) msg += "; missing frames: " + join_indices(missing);
  if (!unexpected.empty()) msg += "; frames not in manifest: " + join_indices(unexpected);
  if (!duplicate.empty()) msg += "; duplicated frames: " + join_indices(duplicate);
  throw ValidationError(msg);
}

struct ClassFrame {
  std::vector<ScoredBox> dets;
  std::vector<std::size_t> det_robot;  // index into the frame's results
  std::vector<BBox> gts;
  std::vector<std::size_t> gt_robot;  // index into the frame's ground truth
};

}  // namespace

EvalReport evaluate(const dataset::DatasetManifest& manifest,
                    const std::vector<pipeline::FrameResult>& results,
                    double iou_threshold) {
  if (!(iou_threshold > 0.0) || iou_threshold > 1.0) {
    throw InvalidArgument("IoU threshold must lie in (0, 1]");
  }
  const auto by_frame = align(manifest, results);

  EvalReport report;
  report.iou_threshold = iou_threshold;
  report.frames = manifest.frames.size();

  std::map<std::string, MatchResult> type_matches;
  std::map<std::string, MatchResult> instance_matches;
  std::vector<std::pair<std::string, std::string>> id_pairs;
  std::vector<std::pair<double, double>> angle_pairs;
  // (type/id) -> per-frame correctness, frame order, only frames where it appears.
  std::map<std::string, std::vector<bool>> streams;

  for (std::size_t k = 0; k < manifest.frames.size(); ++k) {
    const auto& gt = manifest.frames[k].robots;
    const auto& pred = by_frame[k]->robots;

    std::map<std::string, ClassFrame> per_type;
    std::map<std::string, ClassFrame> per_instance;
    for (std::size_t g = 0; g < gt.size(); ++g) {
      auto& t = per_type[gt[g].robot_type];
      t.gts.push_back(gt[g].bbox);
      t.gt_robot.push_back(g);
      auto& i = per_instance[instance_key(gt[g].robot_type, gt[g].instance_id)];
      i.gts.push_back(gt[g].bbox);
      i.gt_robot.push_back(g);
    }
    for (std::size_t d = 0; d < pred.size(); ++d) {
      auto& t = per_type[pred[d].robot_type];
      t.dets.push_back({pred[d].bbox, pred[d].confidence});
      t.det_robot.push_back(d);
      auto& i = per_instance[instance_key(pred[d].robot_type, pred[d].instance_id)];
      i.dets.push_back({pred[d].bbox, pred[d].confidence});
      i.det_robot.push_back(d);
    }

    std::vector<bool> robot_ok(gt.size(), false);
    for (const auto& [type, cf] : per_type) {
      const MatchResult m = match_detections(cf.dets, cf.gts, iou_threshold);
      for (std::size_t j = 0; j < m.detections.size(); ++j) {
        const auto& dm = m.detections[j];
        if (!dm.true_positive) continue;
        const auto& p = pred[cf.det_robot[m.input_index[j]]];
        const std::size_t g = cf.gt_robot[*dm.gt_index];
        id_pairs.emplace_back(p.instance_id, gt[g].instance_id);
        angle_pairs.emplace_back(p.orientation_deg, gt[g].orientation);
        robot_ok[g] = p.instance_id == gt[g].instance_id;
      }
      type_matches[type].append(m);
    }
    for (const auto& [key, cf] : per_instance) {
      instance_matches[key].append(match_detections(cf.dets, cf.gts, iou_threshold));
    }
    for (std::size_t g = 0; g < gt.size(); ++g) {
      streams[instance_key(gt[g].robot_type, gt[g].instance_id)].push_back(robot_ok[g]);
    }
  }

  const auto summarize = [](const std::map<std::string, MatchResult>& matches,
                            std::map<std::string, double>& ap,
                            std::map<std::string, ClassCounts>& counts) {
    for (const auto& [key, m] : matches) {
      counts[key] = {m.gt_count, m.detections.size(), m.true_positives()};
      if (m.gt_count > 0) ap[key] = average_precision(m);
    }
  };
  summarize(type_matches, report.type_ap, report.type_counts);
  summarize(instance_matches, report.instance_ap, report.instance_counts);
  if (!report.type_ap.empty()) report.type_map = mean_ap(report.type_ap);
  if (!report.instance_ap.empty()) report.instance_map = mean_ap(report.instance_ap);
  if (!id_pairs.empty()) report.identification_accuracy = identification_accuracy(id_pairs);
  if (!angle_pairs.empty()) report.orientation_mae = orientation_mae(angle_pairs);
  for (const auto& [key, stream] : streams) {
    // vector<bool> is not contiguous
    const auto plain = std::make_unique<bool[]>(stream.size());
    std::copy(stream.begin(), stream.end(), plain.get());
    accumulate_wrong_runs({plain.get(), stream.size()}, report.wrong_runs);
  }
  return report;
}

std::string report_to_json(const EvalReport& r) {
  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  const auto classes = [](const std::map<std::string, double>& ap,
                          const std::map<std::string, ClassCounts>& counts) {
    json out = json::object();
    for (const auto& [key, c] : counts) {
      json o;
      const auto it = ap.find(key);
      o["ap"] = it == ap.end() ? json(nullptr) : json(it->second);
      o["ground_truth"] = c.ground_truth;
      o["detections"] = c.detections;
      o["true_positives"] = c.true_positives;
      out[key] = std::move(o);
    }
    return out;
  };
  json j;
  j["iou_threshold"] = r.iou_threshold;
  j["frames"] = r.frames;
  j["map_type"] = opt(r.type_map);
  j["map_instance"] = opt(r.instance_map);
  j["identification_accuracy"] = opt(r.identification_accuracy);
  j["orientation_mae_deg"] = opt(r.orientation_mae);
  j["types"] = classes(r.type_ap, r.type_counts);
  j["instances"] = classes(r.instance_ap, r.instance_counts);
  json runs = json::object();
  for (const auto& [len, count] : r.wrong_runs) runs[std::to_string(len)] = count;
  j["wrong_run_lengths"] = std::move(runs);
  return j.dump(2) + "\n";
}

std::string report_table(const EvalReport& r) {
  std::ostringstream out;
  char buf[160];
  const auto pct = [](const std::optional<double>& v) {
    char b[32];
    if (!v) return std::string("n/a");
    std::snprintf(b, sizeof b, "%.1f%%", *v * 100.0);
    return std::string(b);
  };
  std::snprintf(buf, sizeof buf, "frames: %zu   IoU threshold: %.2f\n\n", r.frames,
                r.iou_threshold);
  out << buf;
  std::snprintf(buf, sizeof buf, "%-28s %10s %8s %8s %8s\n", "class", "AP", "GT", "dets", "TP");
  out << buf;
  const auto rows = [&](const std::map<std::string, double>& ap,
                        const std::map<std::string, ClassCounts>& counts) {
    for (const auto& [key, c] : counts) {
      const auto it = ap.find(key);
      const std::optional<double> v =
          it == ap.end() ? std::nullopt : std::optional<double>(it->second);
      std::snprintf(buf, sizeof buf, "%-28s %10s %8zu %8zu %8zu\n", key.c_str(),
                    pct(v).c_str(), c.ground_truth, c.detections, c.true_positives);
      out << buf;
    }
  };
  rows(r.type_ap, r.type_counts);
  out << '\n';
  rows(r.instance_ap, r.instance_counts);
  out << '\n';
  out << "mAP@" << r.iou_threshold << " (type):      " << pct(r.type_map) << '\n';
  out << "mAP@" << r.iou_threshold << " (instance):  " << pct(r.instance_map) << '\n';
  out << "identification accuracy: " << pct(r.identification_accuracy) << '\n';
  if (r.orientation_mae) {
    std::snprintf(buf, sizeof buf, "orientation MAE:         %.2f deg\n", *r.orientation_mae);
    out << buf;
  } else {
    out << "orientation MAE:         n/a\n";
  }
  out << "successive wrong detections (length: count):";
  if (r.wrong_runs.empty()) out << " none";
  for (const auto& [len, count] : r.wrong_runs) out << ' ' << len << ':' << count;
  out << '\n';
  return out.str();
}

}  // namespace swarmloc::metrics
