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

#include <optional>
#include <set>
#include <string>

#include "mish/scenario.hpp"

namespace mish {

struct SimulatorOptions {
  /// Keep session and state flags across test cases. Off by default so that
  /// every execution is independent.
  bool persistent_state = false;
};

/// In-process executor for a SutScenario with a logical clock.
///
/// Each emitted log event advances the clock by one tick; a silent test case
/// still consumes one tick for its zero-length window, so windows of
/// consecutive executions never overlap.
class Simulator final : public Executor {
 public:
  explicit Simulator(SutScenario scenario, SimulatorOptions options = {});

  const ApiSurface& surface() const override { return surface_; }
  ExecutionResult execute(const TestCase& test, const std::string& test_id) override;
  void reset() override;
  std::set<std::string> targets() const override { return list_targets(scenario_); }
  Timestamp now() const override { return clock_; }

  const SutScenario& scenario() const noexcept { return scenario_; }

 private:
  struct Session {
    std::optional<std::string> token;
    std::set<std::string> states;
  };

  int invoke(const ScenarioEndpoint& endpoint, const RestCall& call, bool attach_session,
             Session& session, ExecutionResult& result);
  void emit(const std::string& service, std::string message, ExecutionResult& result);

  SutScenario scenario_;
  ApiSurface surface_;
  SimulatorOptions options_;
  Session persistent_;
  Timestamp clock_ = 0;
};

}  // namespace mish
