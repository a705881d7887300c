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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mish/engine.hpp"

namespace mish::cli {

/// Where tests run: a scenario (file or built-in name) or a live target.
struct TargetOptions {
  std::string scenario;
  std::string live_config;
};

struct SearchOptions {
  std::optional<std::uint64_t> generations;
  std::optional<double> seconds;
  std::size_t population = 20;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  std::uint64_t merge_min_count = 10;
};

struct RunOptions {
  TargetOptions target;
  SearchOptions search;
  std::string algorithm = "mish-lm";
  std::optional<std::string> fitness;
  std::filesystem::path out = "mish-out";
  bool emit_model_dump = false;
  bool emit_templates = false;
};

struct ExperimentOptions {
  TargetOptions target;
  SearchOptions search;
  std::vector<std::string> algorithms{"mish-lm", "mish-ws", "random"};
  std::size_t repeats = 20;
  std::size_t jobs = 1;
  std::filesystem::path out = "mish-experiment";
};

struct ReplayOptions {
  TargetOptions target;
  std::filesystem::path suite;
};

/// One entry of --algo: mish-lm, mish-ws, random, or mish (uses --fitness).
struct AlgorithmChoice {
  std::string label;
  Algorithm algorithm = Algorithm::Mish;
  FitnessKind fitness = FitnessKind::LowerThanMedian;
};

/// Throws InvalidConfig.
AlgorithmChoice parse_algorithm(const std::string& text, const std::optional<std::string>& fitness);
EngineConfig make_engine_config(const SearchOptions& search, const AlgorithmChoice& choice);

// Exit codes: 0 success, 1 run-fatal error, 2 configuration error, 3 replay
// coverage regression.
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_experiment(const ExperimentOptions& options, std::ostream& out, std::ostream& err);
int cmd_replay(const ReplayOptions& options, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mish::cli
