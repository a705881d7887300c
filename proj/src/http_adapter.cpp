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

#include "mish/http_adapter.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "mish/error.hpp"
#include "schema_detail.hpp"

namespace mish {

using nlohmann::json;

namespace {

ParamPlacement parse_placement(const std::string& text, const std::string& where) {
  if (text == "path") return ParamPlacement::Path;
  if (text == "query") return ParamPlacement::Query;
  if (text == "body") return ParamPlacement::Body;
  throw InvalidConfig(where + ": parameter placement must be path, query or body");
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i]))) return false;
  }
  return true;
}

std::string cookie_pair(const std::string& set_cookie) {
  const auto end = set_cookie.find(';');
  return set_cookie.substr(0, end);
}

}  // namespace

LiveTargetConfig LiveTargetConfig::parse(std::string_view json_text) {
  LiveTargetConfig config;
  try {
    const json doc = json::parse(json_text);
    if (doc.at("schema_version").get<int>() != kLiveConfigSchemaVersion)
      throw InvalidConfig("unsupported live config schema_version");
    config.name = doc.value("name", std::string("live"));
    config.base_url = doc.at("base_url").get<std::string>();
    config.timeout = std::chrono::milliseconds(doc.value("timeout_ms", 2000));
    for (const auto& source : doc.value("log_sources", std::vector<std::string>{}))
      config.log_sources.emplace_back(source);
    for (const auto& e : doc.at("endpoints")) {
      LiveEndpoint endpoint;
      endpoint.spec.path = e.at("path").get<std::string>();
      endpoint.spec.service = e.value("service", config.name);
      endpoint.spec.login = e.value("login", false);
      for (const auto& m : e.at("methods")) endpoint.spec.methods.push_back(parse_method(m.get<std::string>()));
      if (endpoint.spec.methods.empty()) throw InvalidConfig(endpoint.spec.path + ": no methods");
      const json params = e.value("params", json::object());
      for (const auto& [name, p] : params.items()) {
        json spec = p;
        const std::string where = endpoint.spec.path + " param " + name;
        if (spec.contains("in")) {
          endpoint.placement[name] = parse_placement(spec.at("in").get<std::string>(), where);
          spec.erase("in");
        }
        endpoint.spec.params.emplace_back(name, detail::parse_param_spec(spec, where));
      }
      config.endpoints.push_back(std::move(endpoint));
    }
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("malformed live config: ") + e.what());
  }
  if (config.endpoints.empty()) throw InvalidConfig("live config declares no endpoints");
  return config;
}

LiveTargetConfig LiveTargetConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot read live config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

ApiSurface LiveTargetConfig::surface() const {
  ApiSurface surface;
  for (const auto& endpoint : endpoints) surface.endpoints.push_back(endpoint.spec);
  return surface;
}

LogTailer::LogTailer(std::vector<std::filesystem::path> sources) {
  for (auto& path : sources) sources_.push_back(Source{std::move(path), 0, {}});
}

void LogTailer::skip_to_end() {
  for (auto& source : sources_) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(source.path, ec);
    source.offset = ec ? 0 : size;
    source.partial.clear();
  }
}

std::vector<std::pair<std::string, std::string>> LogTailer::poll() {
  std::vector<std::pair<std::string, std::string>> lines;
  for (auto& source : sources_) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(source.path, ec);
    if (ec) continue;
    if (size < source.offset) {
      source.offset = 0;
      source.partial.clear();
    }
    if (size == source.offset) continue;
    std::ifstream in(source.path, std::ios::binary);
    in.seekg(static_cast<std::streamoff>(source.offset));
    std::string chunk(size - source.offset, '\0');
    in.read(chunk.data(), static_cast<std::streamsize>(chunk.size()));
    chunk.resize(static_cast<std::size_t>(in.gcount()));
    source.offset += chunk.size();
    source.partial += chunk;
    std::size_t start = 0;
    for (std::size_t nl; (nl = source.partial.find('\n', start)) != std::string::npos; start = nl + 1) {
      std::string line = source.partial.substr(start, nl - start);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos)
        lines.emplace_back(source.path.filename().string(), std::move(line));
    }
    source.partial.erase(0, start);
  }
  return lines;
}

std::string status_class_target(std::string_view endpoint, int status) {
  return std::string(endpoint) + ":" + std::to_string(status / 100) + "xx";
}

LiveExecutor::LiveExecutor(LiveTargetConfig config)
    : config_(std::move(config)), surface_(config_.surface()), tailer_(config_.log_sources) {
  tailer_.skip_to_end();
}

LiveExecutor::~LiveExecutor() = default;

ExecutionResult LiveExecutor::execute(const TestCase& test, const std::string& test_id) {
  ExecutionResult result;
  result.window.test_id = test_id;
  tailer_.poll();  // lines written between test cases belong to no window

  httplib::Client client(config_.base_url);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  std::map<std::string, std::string> jar;
  result.window.start = result.window.end = clock_;

  for (const auto& call : test.calls) {
    const LiveEndpoint* endpoint = nullptr;
    for (const auto& e : config_.endpoints) {
      if (e.spec.path == call.endpoint) endpoint = &e;
    }
    if (endpoint == nullptr) throw UnknownEndpoint(call.endpoint);

    std::string path = call.endpoint;
    httplib::Params query;
    json body = json::object();
    for (const auto& [name, value] : call.params) {
      auto it = endpoint->placement.find(name);
      const ParamPlacement where = it == endpoint->placement.end() ? ParamPlacement::Query : it->second;
      const std::string text = to_string(value);
      if (where == ParamPlacement::Path) {
        const std::string slot = "{" + name + "}";
        if (auto pos = path.find(slot); pos != std::string::npos) path.replace(pos, slot.size(), httplib::detail::encode_url(text));
      } else if (where == ParamPlacement::Query) {
        query.emplace(name, text);
      } else if (const auto* n = std::get_if<std::int64_t>(&value)) {
        body[name] = *n;
      } else {
        body[name] = text;
      }
    }
    const std::string target = query.empty() ? path : httplib::append_query_params(path, query);

    httplib::Headers headers;
    if (call.uses_session && !jar.empty()) {
      std::string cookie;
      for (const auto& [name, value] : jar) {
        if (!cookie.empty()) cookie += "; ";
        cookie += name + "=" + value;
      }
      headers.emplace("Cookie", cookie);
    }

    ++clock_;  // request sent
    httplib::Result response;
    const std::string payload = body.empty() ? std::string() : body.dump();
    switch (call.method) {
      case HttpMethod::Get:
        response = client.Get(target, headers);
        break;
      case HttpMethod::Delete:
        response = client.Delete(target, headers);
        break;
      case HttpMethod::Post:
        response = client.Post(target, headers, payload, "application/json");
        break;
      case HttpMethod::Put:
        response = client.Put(target, headers, payload, "application/json");
        break;
    }

    for (auto& [source, line] : tailer_.poll()) result.events.push_back(LogEvent{clock_++, source, std::move(line)});

    if (!response) {
      const auto error = response.error();
      const bool timed_out = error == httplib::Error::Read || error == httplib::Error::Write ||
                             error == httplib::Error::ConnectionTimeout;
      result.call_errors.push_back(std::string(timed_out ? "Timeout" : "ConnectionFailed") + ": " +
                                   httplib::to_string(error));
      result.statuses.push_back(0);
    } else {
      const int status = response->status;
      result.statuses.push_back(status);
      result.covered.insert(status_class_target(call.endpoint, status));
      if (status == 500) result.faults.insert(call.endpoint + ":500");
      for (const auto& [key, value] : response->headers) {
        if (iequals(key, "Set-Cookie")) {
          const std::string pair = cookie_pair(value);
          const auto eq = pair.find('=');
          if (eq != std::string::npos) jar[pair.substr(0, eq)] = pair.substr(eq + 1);
        }
      }
    }
    result.window.end = clock_++;  // response received
  }
  if (test.calls.empty()) ++clock_;
  return result;
}

}  // namespace mish
