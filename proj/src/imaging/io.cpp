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

#include "swarmloc/imaging/io.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "swarmloc/errors.hpp"

namespace swarmloc::imaging {

namespace {

const std::vector<int> kPngParams = {cv::IMWRITE_PNG_COMPRESSION, 6,
                                     cv::IMWRITE_PNG_STRATEGY,
                                     cv::IMWRITE_PNG_STRATEGY_DEFAULT};

void write_mat(const cv::Mat& mat, const std::filesystem::path& path) {
  std::vector<std::uint8_t> buffer;
  if (!cv::imencode(".png", mat, buffer, kPngParams)) {
    throw IoError("cannot encode PNG for " + path.string());
  }
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  // temporary sibling then rename, so a crash never leaves a truncated file
  auto tmp = path;
  tmp += ".tmp";
  FILE* f = std::fopen(tmp.c_str(), "wb");
  if (f == nullptr) throw IoError("cannot open " + tmp.string() + " for writing");
  const bool ok = std::fwrite(buffer.data(), 1, buffer.size(), f) == buffer.size();
  if (std::fclose(f) != 0 || !ok) {
    std::filesystem::remove(tmp);
    throw IoError("short write on " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace

Image read_image(const std::filesystem::path& path) {
  cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (mat.empty()) throw IoError("cannot read image " + path.string());
  if (mat.depth() != CV_8U) {
    throw IoError("unsupported bit depth in " + path.string());
  }
  cv::Mat converted;
  switch (mat.channels()) {
    case 1:
      cv::cvtColor(mat, converted, cv::COLOR_GRAY2RGB);
      break;
    case 3:
      cv::cvtColor(mat, converted, cv::COLOR_BGR2RGB);
      break;
    case 4:
      cv::cvtColor(mat, converted, cv::COLOR_BGRA2RGBA);
      break;
    default:
      throw IoError("unsupported channel count in " + path.string());
  }
  const int ch = converted.channels();
  Image img(converted.cols, converted.rows, ch);
  const std::size_t row = static_cast<std::size_t>(converted.cols) * ch;
  for (int y = 0; y < converted.rows; ++y) {
    std::copy_n(converted.ptr<std::uint8_t>(y), row, img.pixel(0, y));
  }
  return img;
}

Size read_image_size(const std::filesystem::path& path) {
  // TODO: parse the PNG IHDR chunk directly instead of decoding.
  cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (mat.empty()) throw IoError("cannot read image " + path.string());
  return {mat.cols, mat.rows};
}

void write_png(const Image& image, const std::filesystem::path& path) {
  const int type = image.channels() == 4 ? CV_8UC4 : CV_8UC3;
  cv::Mat rgb(image.height(), image.width(), type,
              const_cast<std::uint8_t*>(image.data().data()));
  cv::Mat bgr;
  cv::cvtColor(rgb, bgr, image.channels() == 4 ? cv::COLOR_RGBA2BGRA
                                               : cv::COLOR_RGB2BGR);
  write_mat(bgr, path);
}

BinaryMask read_mask(const std::filesystem::path& path) {
  cv::Mat mat = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
  if (mat.empty()) throw IoError("cannot read mask " + path.string());
  BinaryMask mask(mat.cols, mat.rows);
  for (int y = 0; y < mat.rows; ++y) {
    const auto* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < mat.cols; ++x) mask.set(x, y, row[x] != 0);
  }
  return mask;
}

void write_mask(const BinaryMask& mask, const std::filesystem::path& path) {
  cv::Mat mat(mask.height(), mask.width(), CV_8UC1);
  for (int y = 0; y < mask.height(); ++y) {
    auto* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < mask.width(); ++x) row[x] = mask.get(x, y) ? 255 : 0;
  }
  write_mat(mat, path);
}

}  // namespace swarmloc::imaging
