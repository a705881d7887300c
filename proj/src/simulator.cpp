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

#include "mish/simulator.hpp"

#include <algorithm>

#include "mish/error.hpp"

namespace mish {

namespace {

const ParamValue* lookup(const RestCall& call, const std::string& name) {
  auto it = call.params.find(name);
  return it == call.params.end() ? nullptr : &it->second;
}

int compare(const ParamValue& a, const ParamValue& b, bool& comparable) {
  const auto* ia = std::get_if<std::int64_t>(&a);
  const auto* ib = std::get_if<std::int64_t>(&b);
  if (ia != nullptr && ib != nullptr) {
    comparable = true;
    return *ia < *ib ? -1 : (*ia > *ib ? 1 : 0);
  }
  comparable = false;
  return 0;
}

bool evaluate(const Predicate& p, const RestCall& call, const std::set<std::string>& states,
              const std::string* session) {
  using Op = Predicate::Op;
  switch (p.op) {
    case Op::Always:
      return true;
    case Op::All:
      return std::all_of(p.children.begin(), p.children.end(),
                         [&](const Predicate& c) { return evaluate(c, call, states, session); });
    case Op::Any:
      return std::any_of(p.children.begin(), p.children.end(),
                         [&](const Predicate& c) { return evaluate(c, call, states, session); });
    case Op::Not:
      return !evaluate(p.children.front(), call, states, session);
    case Op::State:
      return states.count(p.name) != 0;
    case Op::Session:
      return session != nullptr && *session == p.name;
    case Op::In: {
      const ParamValue* v = lookup(call, p.param);
      return v != nullptr && std::find(p.values.begin(), p.values.end(), *v) != p.values.end();
    }
    case Op::Eq:
    case Op::Ne: {
      const ParamValue* v = lookup(call, p.param);
      if (v == nullptr) return false;
      return (*v == p.value) == (p.op == Op::Eq);
    }
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge: {
      const ParamValue* v = lookup(call, p.param);
      if (v == nullptr) return false;
      bool comparable = false;
      const int c = compare(*v, p.value, comparable);
      if (!comparable) return false;
      if (p.op == Op::Lt) return c < 0;
      if (p.op == Op::Le) return c <= 0;
      if (p.op == Op::Gt) return c > 0;
      return c >= 0;
    }
  }
  return false;
}

std::string interpolate(const std::string& text, const RestCall& call) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '{') {
      const auto close = text.find('}', i);
      if (close != std::string::npos) {
        const std::string key = text.substr(i + 1, close - i - 1);
        if (const ParamValue* v = lookup(call, key)) {
          std::string value = to_string(*v);
          out += value.empty() ? "<empty>" : value;
          i = close;
          continue;
        }
        if (key == "path") {
          out += call.endpoint;
          i = close;
          continue;
        }
      }
    }
    out += text[i];
  }
  return out;
}

}  // namespace

Simulator::Simulator(SutScenario scenario, SimulatorOptions options)
    : scenario_(std::move(scenario)), surface_(scenario_.surface()), options_(options) {}

void Simulator::reset() { persistent_ = Session{}; }

void Simulator::emit(const std::string& service, std::string message, ExecutionResult& result) {
  result.events.push_back(LogEvent{clock_++, service, std::move(message)});
}

int Simulator::invoke(const ScenarioEndpoint& endpoint, const RestCall& call, bool attach_session,
                      Session& session, ExecutionResult& result) {
  const EndpointSpec& spec = endpoint.spec;
  const std::string& service = spec.service;

  bool malformed = !endpoint.internal && !spec.allows(call.method);
  for (const auto& [name, param] : spec.params) {
    const ParamValue* v = lookup(call, name);
    if (v == nullptr || !param.accepts(*v)) malformed = true;
  }
  if (malformed) {
    emit(service, "request rejected malformed parameters for " + spec.path, result);
    return 400;
  }

  const std::string* visible = attach_session && session.token ? &*session.token : nullptr;
  const Guard& guard = endpoint.guard;
  bool denied = guard.session && visible == nullptr;
  if (!guard.role.empty() && (visible == nullptr || *visible != guard.role)) denied = true;
  for (const auto& flag : guard.states) {
    if (session.states.count(flag) == 0) denied = true;
  }
  if (denied) {
    emit(service, guard.log.empty() ? "access denied for " + spec.path : interpolate(guard.log, call), result);
    return 403;
  }

  for (const auto& rule : endpoint.rules) {
    if (!evaluate(rule.when, call, session.states, visible)) continue;
    if (!rule.fault.empty()) result.faults.insert(rule.fault);
    for (const auto& effect : rule.effects) {
      switch (effect.kind) {
        case Effect::Kind::Log:
          emit(service, interpolate(effect.text, call), result);
          break;
        case Effect::Kind::Cover:
          result.covered.insert(effect.text);
          break;
        case Effect::Kind::SetSession:
          session.token = interpolate(effect.text, call);
          visible = attach_session ? &*session.token : visible;
          break;
        case Effect::Kind::SetState:
          session.states.insert(effect.text);
          break;
        case Effect::Kind::Call:
          // internal hops carry the caller's session
          invoke(*scenario_.find(effect.text), call, true, session, result);
          break;
      }
    }
    return rule.status;
  }
  return 200;
}

ExecutionResult Simulator::execute(const TestCase& test, const std::string& test_id) {
  ExecutionResult result;
  result.window.test_id = test_id;
  Session fresh;
  Session& session = options_.persistent_state ? persistent_ : fresh;

  for (const auto& call : test.calls) {
    const ScenarioEndpoint* endpoint = scenario_.find(call.endpoint);
    if (endpoint == nullptr || endpoint->internal) throw UnknownEndpoint(call.endpoint);
    result.statuses.push_back(invoke(*endpoint, call, call.uses_session, session, result));
  }

  if (result.events.empty()) {
    result.window.start = result.window.end = clock_++;
  } else {
    result.window.start = result.events.front().timestamp;
    result.window.end = result.events.back().timestamp;
  }
  return result;
}

}  // namespace mish
