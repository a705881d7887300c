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

#include "mish/rest.hpp"

#include <algorithm>
#include <cctype>

#include "mish/error.hpp"

namespace mish {

std::string_view to_string(HttpMethod method) {
  switch (method) {
    case HttpMethod::Get:
      return "GET";
    case HttpMethod::Post:
      return "POST";
    case HttpMethod::Put:
      return "PUT";
    case HttpMethod::Delete:
      return "DELETE";
  }
  return "GET";
}

HttpMethod parse_method(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "GET") return HttpMethod::Get;
  if (upper == "POST") return HttpMethod::Post;
  if (upper == "PUT") return HttpMethod::Put;
  if (upper == "DELETE") return HttpMethod::Delete;
  throw InvalidConfig("unsupported HTTP method '" + std::string(text) + "'");
}

std::string to_string(const ParamValue& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  return std::get<std::string>(value);
}

bool ParamSpec::accepts(const ParamValue& value) const {
  switch (kind) {
    case Kind::Int: {
      const auto* i = std::get_if<std::int64_t>(&value);
      return i != nullptr && *i >= min && *i <= max;
    }
    case Kind::Enum: {
      const auto* s = std::get_if<std::string>(&value);
      return s != nullptr && std::find(values.begin(), values.end(), *s) != values.end();
    }
    case Kind::String:
      return std::holds_alternative<std::string>(value);
  }
  return false;
}

const ParamSpec* EndpointSpec::param(std::string_view name) const {
  for (const auto& [key, spec] : params) {
    if (key == name) return &spec;
  }
  return nullptr;
}

bool EndpointSpec::allows(HttpMethod method) const {
  return std::find(methods.begin(), methods.end(), method) != methods.end();
}

const EndpointSpec* ApiSurface::find(std::string_view path) const {
  for (const auto& endpoint : endpoints) {
    if (endpoint.path == path) return &endpoint;
  }
  return nullptr;
}

std::string check_test_case(const ApiSurface& surface, const TestCase& test) {
  if (test.calls.empty()) return "test case has no calls";
  for (std::size_t i = 0; i < test.calls.size(); ++i) {
    const RestCall& call = test.calls[i];
    const EndpointSpec* endpoint = surface.find(call.endpoint);
    const std::string where = "call " + std::to_string(i) + " (" + call.endpoint + "): ";
    if (endpoint == nullptr) return where + "unknown endpoint";
    if (!endpoint->allows(call.method)) return where + "method not allowed";
    for (const auto& [name, spec] : endpoint->params) {
      auto it = call.params.find(name);
      if (it == call.params.end()) return where + "missing parameter " + name;
      if (!spec.accepts(it->second)) return where + "parameter " + name + " out of domain";
    }
  }
  return {};
}

}  // namespace mish
