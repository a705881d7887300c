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

#include "mish/suite_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mish/error.hpp"

namespace mish {

using nlohmann::json;

std::string write_suite_json(const std::vector<SuiteEntry>& suite, std::string_view scenario_name) {
  json tests = json::array();
  for (std::size_t i = 0; i < suite.size(); ++i) {
    json calls = json::array();
    for (const auto& call : suite[i].test.calls) {
      json params = json::object();
      for (const auto& [name, value] : call.params) {
        if (const auto* n = std::get_if<std::int64_t>(&value)) {
          params[name] = *n;
        } else {
          params[name] = std::get<std::string>(value);
        }
      }
      calls.push_back({{"method", std::string(to_string(call.method))},
                       {"endpoint", call.endpoint},
                       {"params", params},
                       {"uses_session", call.uses_session}});
    }
    tests.push_back({{"name", "test_" + std::to_string(i)},
                     {"covers", suite[i].covers},
                     {"faults", suite[i].faults},
                     {"calls", calls}});
  }
  json doc = {{"schema_version", kSuiteSchemaVersion},
              {"scenario", std::string(scenario_name)},
              {"tests", tests}};
  return doc.dump(2) + "\n";
}

std::vector<SuiteEntry> read_suite_json(std::string_view text) {
  std::vector<SuiteEntry> suite;
  try {
    const json doc = json::parse(text);
    if (doc.at("schema_version").get<int>() != kSuiteSchemaVersion)
      throw InvalidConfig("unsupported suite schema_version");
    for (const auto& t : doc.at("tests")) {
      SuiteEntry entry;
      entry.covers = t.value("covers", std::vector<std::string>{});
      entry.faults = t.value("faults", std::vector<std::string>{});
      for (const auto& c : t.at("calls")) {
        RestCall call;
        call.method = parse_method(c.at("method").get<std::string>());
        call.endpoint = c.at("endpoint").get<std::string>();
        call.uses_session = c.value("uses_session", false);
        const json params = c.value("params", json::object());
        for (const auto& [name, value] : params.items()) {
          if (value.is_number_integer()) {
            call.params.emplace(name, value.get<std::int64_t>());
          } else if (value.is_string()) {
            call.params.emplace(name, value.get<std::string>());
          } else {
            throw InvalidConfig("parameter " + name + " must be an integer or a string");
          }
        }
        entry.test.calls.push_back(std::move(call));
      }
      suite.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("malformed test suite: ") + e.what());
  }
  return suite;
}

std::string write_report_csv(const RunReport& report) {
  std::string out = "elapsed_s,generation,covered_targets,faults\n";
  char line[128];
  for (const auto& s : report.samples) {
    std::snprintf(line, sizeof line, "%.3f,%llu,%zu,%zu\n", s.elapsed_s,
                  static_cast<unsigned long long>(s.generation), s.covered_targets, s.faults);
    out += line;
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidConfig("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace mish
