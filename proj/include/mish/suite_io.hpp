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
#include <string>
#include <string_view>
#include <vector>

#include "mish/engine.hpp"

namespace mish {

inline constexpr int kSuiteSchemaVersion = 1;

/// JSON test suite: `{"schema_version", "scenario", "tests": [{"name",
/// "covers", "faults", "calls": [{"method", "endpoint", "params",
/// "uses_session"}]}]}`.
std::string write_suite_json(const std::vector<SuiteEntry>& suite, std::string_view scenario_name);
/// Throws InvalidConfig on malformed documents.
std::vector<SuiteEntry> read_suite_json(std::string_view text);

/// `elapsed_s,generation,covered_targets,faults`, one row per sample.
std::string write_report_csv(const RunReport& report);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace mish
