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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mish/rest.hpp"

namespace mish {

inline constexpr int kLiveConfigSchemaVersion = 1;

enum class ParamPlacement { Path, Query, Body };

struct LiveEndpoint {
  EndpointSpec spec;
  /// Parameters not listed here go to the query string.
  std::map<std::string, ParamPlacement> placement;
};

/// Where and how to reach a running system.
///
/// JSON shape: `{"schema_version": 1, "base_url": "http://host:port",
/// "timeout_ms": 2000, "log_sources": ["path", ...], "endpoints": [{"path":
/// "/users/{id}", "methods": ["GET"], "login": false, "params": {"id":
/// {"int": [1, 9], "in": "path"}}}]}`.
struct LiveTargetConfig {
  std::string name = "live";
  std::string base_url;
  std::vector<LiveEndpoint> endpoints;
  std::vector<std::filesystem::path> log_sources;
  std::chrono::milliseconds timeout{2000};

  /// Throws InvalidConfig.
  static LiveTargetConfig parse(std::string_view json_text);
  static LiveTargetConfig load_file(const std::filesystem::path& path);

  ApiSurface surface() const;
};

/// Follows appended lines of a set of log files.
class LogTailer {
 public:
  explicit LogTailer(std::vector<std::filesystem::path> sources);

  /// Forgets everything currently in the files.
  void skip_to_end();
  /// Complete lines appended since the last call, per file in source order.
  /// A file that shrank is read again from the start.
  std::vector<std::pair<std::string, std::string>> poll();

 private:
  struct Source {
    std::filesystem::path path;
    std::uintmax_t offset = 0;
    std::string partial;
  };
  std::vector<Source> sources_;
};

/// Sends each call as a real HTTP/1.1 request, sequentially.
///
/// Targets are synthesized as `endpoint:Nxx` status classes and 500
/// responses as `endpoint:500` faults. The logical clock ticks once per
/// request sent, once per log line read and once per response, so log
/// lines are ordered by arrival rather than by the timestamps they carry.
/// Cookies set by responses are kept for the rest of the test case and
/// sent on calls that use the session.
class LiveExecutor final : public Executor {
 public:
  explicit LiveExecutor(LiveTargetConfig config);
  ~LiveExecutor() override;

  const ApiSurface& surface() const override { return surface_; }
  ExecutionResult execute(const TestCase& test, const std::string& test_id) override;
  void reset() override {}
  std::set<std::string> targets() const override { return {}; }
  Timestamp now() const override { return clock_; }

 private:
  LiveTargetConfig config_;
  ApiSurface surface_;
  LogTailer tailer_;
  Timestamp clock_ = 0;
};

/// Status-class target id for a live response, e.g. "/users:2xx".
std::string status_class_target(std::string_view endpoint, int status);

}  // namespace mish
