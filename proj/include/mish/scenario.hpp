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

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mish/rest.hpp"

namespace mish {

inline constexpr int kScenarioSchemaVersion = 1;

/// Condition over a call's parameters and the per-test session state.
struct Predicate {
  enum class Op { Always, Eq, Ne, Lt, Le, Gt, Ge, In, State, Session, All, Any, Not };

  Op op = Op::Always;
  std::string param;
  ParamValue value;
  std::vector<ParamValue> values;
  std::string name;  // state flag or session role
  std::vector<Predicate> children;
};

struct Effect {
  enum class Kind { Log, Cover, SetSession, SetState, Call };

  Kind kind = Kind::Log;
  /// Log template (with `{param}` placeholders), target id, session value,
  /// state flag or internal endpoint path, depending on `kind`.
  std::string text;
};

struct ResponseRule {
  Predicate when;
  int status = 200;
  std::string fault;  // non-empty implies status 500
  std::vector<Effect> effects;
};

/// Preconditions checked before any rule; failure answers 403.
struct Guard {
  bool session = false;
  std::string role;
  std::vector<std::string> states;
  std::string log;

  bool empty() const { return !session && role.empty() && states.empty(); }
};

struct ScenarioEndpoint {
  EndpointSpec spec;
  bool internal = false;
  Guard guard;
  std::vector<ResponseRule> rules;
};

/// Declarative description of a simulated microservice system.
///
/// Scenario files are JSON; see fixtures/README.md for the schema.
struct SutScenario {
  int schema_version = kScenarioSchemaVersion;
  std::string name;
  std::string description;
  std::vector<ScenarioEndpoint> endpoints;
  std::vector<std::string> targets;
  std::vector<std::string> faults;

  /// Parses and validates a scenario document. Throws InvalidConfig.
  static SutScenario parse(std::string_view json_text);
  static SutScenario load_file(const std::filesystem::path& path);

  const ScenarioEndpoint* find(std::string_view path) const;
  /// Public endpoints only; internal sub-endpoints are not callable by tests.
  ApiSurface surface() const;
};

std::set<std::string> list_targets(const SutScenario& scenario);

/// Names of the scenarios compiled into the library.
std::vector<std::string> builtin_scenarios();
/// Source text of a compiled-in scenario, or empty if unknown.
std::string_view builtin_scenario_text(std::string_view name);

/// Resolves `name_or_path` as a file first, then as a built-in name.
SutScenario resolve_scenario(const std::string& name_or_path);

}  // namespace mish
