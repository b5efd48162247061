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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swarmloc/compose/ground_truth.hpp"

namespace swarmloc::dataset {

using compose::GroundTruthRecord;

/// One line of a manifest: an image file and its labels.
struct FrameRecord {
  std::string image;  // relative to the manifest directory
  int width = 0;
  int height = 0;
  std::uint64_t seed = 0;
  std::string background;  // background source name, empty if unknown
  std::vector<GroundTruthRecord> robots;
  int decoys = 0;
  /// Free-form stratification attributes (lighting, floor colour, ...).
  std::map<std::string, std::string> tags;

  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

/// key -> value -> usage count; keys are "background", "type", "instance".
using BalanceCounts = std::map<std::string, std::map<std::string, std::int64_t>>;

struct DatasetMeta {
  std::string spec_hash;
  std::uint64_t seed = 0;
  std::optional<std::string> created;
  BalanceCounts counts;

  friend bool operator==(const DatasetMeta&, const DatasetMeta&) = default;
};

struct DatasetManifest {
  std::vector<FrameRecord> frames;
  DatasetMeta meta;

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

/// Usage counts recomputed from the frame records. Instances are keyed
/// "<type>/<id>".
BalanceCounts recount(const std::vector<FrameRecord>& frames);

/// `<dir>/<stem>.meta.json` for `<dir>/<stem>.jsonl`.
std::filesystem::path meta_path_for(const std::filesystem::path& manifest_path);

/// Writes the JSON Lines manifest and its sibling metadata file. Each file is
/// written to a temporary name and renamed into place.
void write_manifest(const DatasetManifest& manifest,
                    const std::filesystem::path& path);

/// Reads a manifest (and its metadata file when present). Throws ParseError
/// with the offending line number. With `validate`, every image must exist
/// and match its declared size, and the stored counts must equal a recount;
/// failures raise ValidationError listing the offending frames.
DatasetManifest read_manifest(const std::filesystem::path& path,
                              bool validate = false);

/// JSON forms shared with the pipeline result files.
std::string frame_to_json_line(const FrameRecord& frame);
FrameRecord frame_from_json_line(const std::string& line, std::size_t line_no);

}  // namespace swarmloc::dataset
