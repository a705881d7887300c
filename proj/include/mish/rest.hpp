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

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mish/trace.hpp"

namespace mish {

enum class HttpMethod { Get, Post, Put, Delete };

std::string_view to_string(HttpMethod method);
/// Throws InvalidConfig on anything but GET/POST/PUT/DELETE.
HttpMethod parse_method(std::string_view text);

/// Integer parameters hold int64; enum members and free strings hold text.
using ParamValue = std::variant<std::int64_t, std::string>;

std::string to_string(const ParamValue& value);

struct RestCall {
  HttpMethod method = HttpMethod::Get;
  std::string endpoint;
  std::map<std::string, ParamValue> params;
  /// Attach the session captured earlier in the same test case.
  bool uses_session = false;

  bool operator==(const RestCall&) const = default;
};

struct TestCase {
  std::vector<RestCall> calls;

  bool operator==(const TestCase&) const = default;
};

struct ParamSpec {
  enum class Kind { Int, Enum, String };

  Kind kind = Kind::Int;
  std::int64_t min = 0;
  std::int64_t max = 0;
  /// Enum members, or seed values for free strings.
  std::vector<std::string> values;

  bool accepts(const ParamValue& value) const;
};

/// What the test generator needs to know about one callable endpoint.
struct EndpointSpec {
  std::string path;
  std::string service;
  std::vector<HttpMethod> methods;
  std::vector<std::pair<std::string, ParamSpec>> params;
  /// Calls to this endpoint can open a session.
  bool login = false;

  const ParamSpec* param(std::string_view name) const;
  bool allows(HttpMethod method) const;
};

struct ApiSurface {
  std::vector<EndpointSpec> endpoints;

  const EndpointSpec* find(std::string_view path) const;
};

/// Checks a test case against the surface; returns a description of the
/// first problem, or an empty string.
std::string check_test_case(const ApiSurface& surface, const TestCase& test);

struct ExecutionResult {
  std::vector<int> statuses;
  std::vector<LogEvent> events;
  std::set<std::string> covered;
  std::set<std::string> faults;
  ExecutionWindow window;
  /// Transport-level failures, one entry per failed call (live mode only).
  std::vector<std::string> call_errors;
};

/// Runs test cases against a system under test, one at a time.
class Executor {
 public:
  virtual ~Executor() = default;

  virtual const ApiSurface& surface() const = 0;
  virtual ExecutionResult execute(const TestCase& test, const std::string& test_id) = 0;
  virtual void reset() = 0;
  /// Declared test targets; empty when targets are discovered at run time.
  virtual std::set<std::string> targets() const = 0;
  /// Current logical time of the executor's clock.
  virtual Timestamp now() const = 0;
};

}  // namespace mish
