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

#include "swarmloc/pipeline/results_io.hpp"

#include <fstream>

#include "json.hpp"
#include "swarmloc/angles.hpp"
#include "swarmloc/dataset/atomic_file.hpp"
#include "swarmloc/errors.hpp"

namespace swarmloc::pipeline {

using json = nlohmann::ordered_json;

std::string result_to_json_line(const FrameResult& result) {
  json j;
  j["frame"] = result.frame;
  j["robots"] = json::array();
  for (const auto& r : result.robots) {
    json o;
    o["type"] = r.robot_type;
    o["id"] = r.instance_id;
    o["bbox"] = {r.bbox.x_min(), r.bbox.y_min(), r.bbox.x_max(), r.bbox.y_max()};
    o["orientation_deg"] = quantize_degrees(r.orientation_deg);
    o["confidence"] = r.confidence;
    o["id_confidence"] = r.id_confidence;
    if (r.position_m) o["position_m"] = *r.position_m;
    j["robots"].push_back(std::move(o));
  }
  return j.dump();
}

FrameResult result_from_json_line(const std::string& line, std::size_t line_no) {
  try {
    const json j = json::parse(line);
    FrameResult out;
    out.frame = j.at("frame").get<std::size_t>();
    for (const auto& o : j.at("robots")) {
      TrackedRobot r;
      r.robot_type = o.at("type").get<std::string>();
      r.instance_id = o.value("id", std::string{});
      const auto& b = o.at("bbox");
      if (!b.is_array() || b.size() != 4) throw ParseError(line_no, "bbox must be [x0,y0,x1,y1]");
      r.bbox = BBox(b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), b[3].get<int>());
      r.orientation_deg = o.value("orientation_deg", 0.0);
      r.confidence = o.value("confidence", 1.0);
      r.id_confidence = o.value("id_confidence", 1.0);
      if (o.contains("position_m")) r.position_m = o["position_m"].get<std::array<double, 3>>();
      r.frame_index = out.frame;
      out.robots.push_back(std::move(r));
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(line_no, e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(line_no, e.what());
  }
}

void write_results(const std::vector<FrameResult>& results,
                   const std::filesystem::path& path) {
  std::string body;
  for (const auto& r : results) {
    body += result_to_json_line(r);
    body += '\n';
  }
  dataset::write_file_atomic(path, body);
}

std::vector<FrameResult> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open results " + path.string());
  std::vector<FrameResult> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(result_from_json_line(line, line_no));
  }
  return out;
}

}  // namespace swarmloc::pipeline
