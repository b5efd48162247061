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

#include <stdexcept>
#include <string>

namespace swarmloc {

/// Base of every error raised by the library. `exit_code()` maps the error
/// onto the CLI convention (1 runtime failure, 2 usage/config error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

class EmptyMaskError : public Error {
 public:
  using Error::Error;
};

class ExtractionFailed : public Error {
 public:
  ExtractionFailed(std::string frame_id, const std::string& what)
      : Error(what), frame_id_(std::move(frame_id)) {}
  const std::string& frame_id() const noexcept { return frame_id_; }

 private:
  std::string frame_id_;
};

class PlacementInfeasible : public Error {
 public:
  using Error::Error;
};

class InvalidCrop : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

class UndefinedAp : public Error {
 public:
  using Error::Error;
};

}  // namespace swarmloc
