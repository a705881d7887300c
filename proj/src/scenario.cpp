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

#include "mish/scenario.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mish/error.hpp"
#include "schema_detail.hpp"

namespace mish {

using nlohmann::json;

namespace {

ParamValue value_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return j.get<std::string>();
  throw InvalidConfig(where + ": expected an integer or a string");
}

}  // namespace

ParamSpec detail::parse_param_spec(const json& j, const std::string& where) {
  if (!j.is_object() || j.size() != 1) throw InvalidConfig(where + ": expected one of int/enum/string");
  ParamSpec spec;
  if (auto it = j.find("int"); it != j.end()) {
    if (!it->is_array() || it->size() != 2) throw InvalidConfig(where + ": int needs [min, max]");
    spec.kind = ParamSpec::Kind::Int;
    spec.min = (*it)[0].get<std::int64_t>();
    spec.max = (*it)[1].get<std::int64_t>();
    if (spec.min > spec.max) throw InvalidConfig(where + ": empty int range");
  } else if (auto it = j.find("enum"); it != j.end()) {
    spec.kind = ParamSpec::Kind::Enum;
    spec.values = it->get<std::vector<std::string>>();
    if (spec.values.empty()) throw InvalidConfig(where + ": empty enum");
  } else if (auto it = j.find("string"); it != j.end()) {
    spec.kind = ParamSpec::Kind::String;
    spec.values = it->get<std::vector<std::string>>();
  } else {
    throw InvalidConfig(where + ": unknown parameter kind");
  }
  return spec;
}

namespace {

Predicate parse_predicate(const json& j, const std::string& where) {
  Predicate p;
  if (j.is_null()) return p;
  if (!j.is_object()) throw InvalidConfig(where + ": predicate must be an object");
  if (auto it = j.find("all"); it != j.end()) {
    p.op = Predicate::Op::All;
  } else if (auto it2 = j.find("any"); it2 != j.end()) {
    p.op = Predicate::Op::Any;
  }
  if (p.op == Predicate::Op::All || p.op == Predicate::Op::Any) {
    const json& list = j.at(p.op == Predicate::Op::All ? "all" : "any");
    if (!list.is_array()) throw InvalidConfig(where + ": all/any need a list");
    for (const auto& child : list) p.children.push_back(parse_predicate(child, where));
    return p;
  }
  if (auto it = j.find("not"); it != j.end()) {
    p.op = Predicate::Op::Not;
    p.children.push_back(parse_predicate(*it, where));
    return p;
  }
  if (auto it = j.find("state"); it != j.end()) {
    p.op = Predicate::Op::State;
    p.name = it->get<std::string>();
    return p;
  }
  if (auto it = j.find("session"); it != j.end()) {
    p.op = Predicate::Op::Session;
    p.name = it->get<std::string>();
    return p;
  }
  if (auto it = j.find("param"); it != j.end()) {
    p.param = it->get<std::string>();
    static const std::map<std::string, Predicate::Op> kOps = {
        {"eq", Predicate::Op::Eq}, {"ne", Predicate::Op::Ne}, {"lt", Predicate::Op::Lt},
        {"le", Predicate::Op::Le}, {"gt", Predicate::Op::Gt}, {"ge", Predicate::Op::Ge},
        {"in", Predicate::Op::In}};
    for (const auto& [key, op] : kOps) {
      auto operand = j.find(key);
      if (operand == j.end()) continue;
      p.op = op;
      if (op == Predicate::Op::In) {
        if (!operand->is_array()) throw InvalidConfig(where + ": 'in' needs a list");
        for (const auto& v : *operand) p.values.push_back(value_from_json(v, where));
      } else {
        p.value = value_from_json(*operand, where);
      }
      return p;
    }
    throw InvalidConfig(where + ": parameter predicate without comparison");
  }
  throw InvalidConfig(where + ": unrecognised predicate");
}

Effect parse_effect(const json& j, const std::string& where) {
  static const std::map<std::string, Effect::Kind> kKinds = {{"log", Effect::Kind::Log},
                                                            {"cover", Effect::Kind::Cover},
                                                            {"session", Effect::Kind::SetSession},
                                                            {"set_state", Effect::Kind::SetState},
                                                            {"call", Effect::Kind::Call}};
  if (!j.is_object() || j.size() != 1) throw InvalidConfig(where + ": effect must have exactly one key");
  auto kind = kKinds.find(j.begin().key());
  if (kind == kKinds.end()) throw InvalidConfig(where + ": unknown effect '" + j.begin().key() + "'");
  return Effect{kind->second, j.begin().value().get<std::string>()};
}

ResponseRule parse_rule(const json& j, const std::string& where) {
  ResponseRule rule;
  rule.when = parse_predicate(j.value("when", json()), where);
  rule.status = j.value("status", 200);
  rule.fault = j.value("fault", std::string());
  if (!rule.fault.empty()) {
    if (j.contains("status") && rule.status != 500) throw InvalidConfig(where + ": faults answer 500");
    rule.status = 500;
  }
  if (rule.status == 500 && rule.fault.empty()) throw InvalidConfig(where + ": status 500 needs a fault id");
  if (rule.status != 200 && rule.status != 400 && rule.status != 403 && rule.status != 500)
    throw InvalidConfig(where + ": unsupported status " + std::to_string(rule.status));
  for (const auto& e : j.value("effects", json::array())) rule.effects.push_back(parse_effect(e, where));
  return rule;
}

void validate(const SutScenario& scenario) {
  const std::set<std::string> targets(scenario.targets.begin(), scenario.targets.end());
  const std::set<std::string> faults(scenario.faults.begin(), scenario.faults.end());
  if (targets.size() != scenario.targets.size()) throw InvalidConfig("duplicate target id");
  if (faults.size() != scenario.faults.size()) throw InvalidConfig("duplicate fault id");

  std::set<std::string> paths;
  for (const auto& endpoint : scenario.endpoints) {
    const std::string& path = endpoint.spec.path;
    if (!paths.insert(path).second) throw InvalidConfig("duplicate endpoint " + path);
    for (const auto& rule : endpoint.rules) {
      if (!rule.fault.empty() && faults.count(rule.fault) == 0)
        throw InvalidConfig(path + ": undeclared fault " + rule.fault);
      for (const auto& effect : rule.effects) {
        if (effect.kind == Effect::Kind::Cover && targets.count(effect.text) == 0)
          throw InvalidConfig(path + ": undeclared target " + effect.text);
        if (effect.kind == Effect::Kind::Call) {
          const ScenarioEndpoint* callee = scenario.find(effect.text);
          if (callee == nullptr || !callee->internal)
            throw InvalidConfig(path + ": calls unknown internal endpoint " + effect.text);
        }
      }
    }
  }

  // sub-endpoint call graph must be acyclic
  std::map<std::string, int> mark;
  std::function<void(const ScenarioEndpoint&)> visit = [&](const ScenarioEndpoint& endpoint) {
    int& m = mark[endpoint.spec.path];
    if (m == 2) return;
    if (m == 1) throw InvalidConfig("internal call cycle through " + endpoint.spec.path);
    m = 1;
    for (const auto& rule : endpoint.rules) {
      for (const auto& effect : rule.effects) {
        if (effect.kind == Effect::Kind::Call) visit(*scenario.find(effect.text));
      }
    }
    mark[endpoint.spec.path] = 2;
  };
  for (const auto& endpoint : scenario.endpoints) visit(endpoint);
}

}  // namespace

SutScenario SutScenario::parse(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidConfig(std::string("scenario is not valid JSON: ") + e.what());
  }

  SutScenario scenario;
  try {
    scenario.schema_version = doc.at("schema_version").get<int>();
    if (scenario.schema_version != kScenarioSchemaVersion)
      throw InvalidConfig("unsupported scenario schema_version " + std::to_string(scenario.schema_version));
    scenario.name = doc.at("name").get<std::string>();
    scenario.description = doc.value("description", std::string());
    scenario.targets = doc.value("targets", std::vector<std::string>{});
    scenario.faults = doc.value("faults", std::vector<std::string>{});

    for (const auto& service : doc.value("services", json::array())) {
      const std::string service_name = service.at("name").get<std::string>();
      for (const auto& e : service.value("endpoints", json::array())) {
        ScenarioEndpoint endpoint;
        endpoint.spec.path = e.at("path").get<std::string>();
        endpoint.spec.service = service_name;
        const std::string where = service_name + " " + endpoint.spec.path;
        for (const auto& m : e.at("methods")) endpoint.spec.methods.push_back(parse_method(m.get<std::string>()));
        if (endpoint.spec.methods.empty()) throw InvalidConfig(where + ": no methods");
        const json params = e.value("params", json::object());
        for (const auto& [name, p] : params.items())
          endpoint.spec.params.emplace_back(name, detail::parse_param_spec(p, where + " param " + name));
        endpoint.spec.login = e.value("login", false);
        endpoint.internal = e.value("internal", false);
        if (auto g = e.find("guard"); g != e.end()) {
          const json& session = g->value("session", json(false));
          if (session.is_boolean()) {
            endpoint.guard.session = session.get<bool>();
          } else {
            endpoint.guard.session = true;
            endpoint.guard.role = session.get<std::string>();
          }
          endpoint.guard.states = g->value("state", std::vector<std::string>{});
          endpoint.guard.log = g->value("log", std::string());
        }
        for (const auto& r : e.value("responses", json::array())) endpoint.rules.push_back(parse_rule(r, where));
        if (endpoint.rules.empty()) endpoint.rules.push_back(ResponseRule{});
        scenario.endpoints.push_back(std::move(endpoint));
      }
    }
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("malformed scenario: ") + e.what());
  }
  validate(scenario);
  return scenario;
}

SutScenario SutScenario::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot read scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

const ScenarioEndpoint* SutScenario::find(std::string_view path) const {
  for (const auto& endpoint : endpoints) {
    if (endpoint.spec.path == path) return &endpoint;
  }
  return nullptr;
}

ApiSurface SutScenario::surface() const {
  ApiSurface surface;
  for (const auto& endpoint : endpoints) {
    if (!endpoint.internal) surface.endpoints.push_back(endpoint.spec);
  }
  return surface;
}

std::set<std::string> list_targets(const SutScenario& scenario) {
  return {scenario.targets.begin(), scenario.targets.end()};
}

SutScenario resolve_scenario(const std::string& name_or_path) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(name_or_path, ec)) return SutScenario::load_file(name_or_path);
  const std::string_view text = builtin_scenario_text(name_or_path);
  if (text.empty()) throw InvalidConfig("no scenario file or built-in scenario named '" + name_or_path + "'");
  return SutScenario::parse(text);
}

}  // namespace mish
