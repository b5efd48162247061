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

#include "swarmloc/dataset/split.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "swarmloc/compose/rng.hpp"
#include "swarmloc/errors.hpp"

namespace swarmloc::dataset {

namespace {

std::string join(const std::set<std::string>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += '+';
    out += v;
  }
  return out;
}

}  // namespace

std::string stratum_value(const FrameRecord& frame, const std::string& key) {
  if (key == "background") return frame.background;
  if (key == "types") {
    std::set<std::string> s;
    for (const auto& r : frame.robots) s.insert(r.robot_type);
    return join(s);
  }
  if (key == "instances") {
    std::set<std::string> s;
    for (const auto& r : frame.robots) s.insert(r.robot_type + "/" + r.instance_id);
    return join(s);
  }
  if (key.rfind("tag:", 0) == 0) {
    const auto it = frame.tags.find(key.substr(4));
    return it == frame.tags.end() ? std::string{} : it->second;
  }
  throw InvalidArgument("unknown stratum key '" + key + "'");
}

StratifiedSplit split_eval_set(const DatasetManifest& manifest,
                               const std::vector<std::string>& strata,
                               int per_stratum, std::uint64_t seed) {
  if (per_stratum < 0) throw InvalidArgument("per_stratum must be >= 0");
  std::map<std::vector<std::string>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < manifest.frames.size(); ++i) {
    std::vector<std::string> key;
    for (const auto& k : strata) key.push_back(stratum_value(manifest.frames[i], k));
    groups[key].push_back(i);
  }

  std::vector<bool> chosen(manifest.frames.size(), false);
  std::uint64_t stream = 0;
  for (auto& [key, members] : groups) {
    if (members.size() < static_cast<std::size_t>(per_stratum)) {
      std::string name;
      for (std::size_t k = 0; k < key.size(); ++k) {
        if (k) name += ", ";
        name += strata[k] + "=" + key[k];
      }
      throw InvalidArgument("stratum {" + name + "} has " +
                            std::to_string(members.size()) + " frames, " +
                            std::to_string(per_stratum) + " required");
    }
    compose::Rng rng(compose::derive_seed(seed, stream++));
    rng.shuffle(std::span<std::size_t>(members));
    for (int k = 0; k < per_stratum; ++k) chosen[members[static_cast<std::size_t>(k)]] = true;
  }

  StratifiedSplit out;
  out.selected.meta = manifest.meta;
  out.rest.meta = manifest.meta;
  for (std::size_t i = 0; i < manifest.frames.size(); ++i) {
    (chosen[i] ? out.selected : out.rest).frames.push_back(manifest.frames[i]);
  }
  out.selected.meta.counts = recount(out.selected.frames);
  out.rest.meta.counts = recount(out.rest.frames);
  return out;
}

}  // namespace swarmloc::dataset
