/*
 *  Copyright (c) 2026 The mish authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mish {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two execution windows intersect; the harness ran tests concurrently.
class OverlappingWindows : public Error {
 public:
  using Error::Error;
};

/// Replay hit a (state, symbol) pair with no transition.
class UnknownTransition : public Error {
 public:
  explicit UnknownTransition(std::size_t position)
      : Error("no transition for symbol at trace position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A test case names an endpoint the active scenario does not declare.
class UnknownEndpoint : public Error {
 public:
  explicit UnknownEndpoint(const std::string& path)
      : Error("unknown endpoint: " + path), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class EmptyScenario : public Error {
 public:
  EmptyScenario() : Error("scenario declares no callable endpoints") {}
};

/// Malformed scenario, live target or engine configuration.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

}  // namespace mish
