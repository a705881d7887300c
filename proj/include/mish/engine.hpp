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
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mish/automaton.hpp"
#include "mish/fitness.hpp"
#include "mish/log_templates.hpp"
#include "mish/operators.hpp"
#include "mish/rest.hpp"

namespace mish {

enum class Algorithm { Mish, Random };

/// Stops at whichever limit is hit first; at least one must be set.
struct Budget {
  std::optional<std::uint64_t> generations;
  std::optional<double> seconds;
};

struct EngineConfig {
  Algorithm algorithm = Algorithm::Mish;
  FitnessKind fitness = FitnessKind::LowerThanMedian;
  std::size_t population = 20;
  std::size_t tournament = 4;
  std::size_t max_len = kDefaultMaxTestLength;
  /// Share of offspring drawn fresh instead of bred by tournament+mutation.
  double sample_probability = 0.1;
  std::uint64_t seed = 0;
  Budget budget;
  MergeConfig merge;
  TemplateTreeConfig templates;

  /// Throws InvalidConfig.
  void validate() const;
};

struct SuiteEntry {
  TestCase test;
  std::vector<std::string> covers;
  std::vector<std::string> faults;
};

/// Best known test per covered target and per revealed fault.
class Archive {
 public:
  /// Records what `result` covered; a stored test is only replaced by a
  /// strictly shorter one.
  void update(const TestCase& test, const ExecutionResult& result);

  std::size_t covered_count() const noexcept { return targets_.size(); }
  std::size_t fault_count() const noexcept { return faults_.size(); }
  const std::map<std::string, TestCase>& targets() const noexcept { return targets_; }
  const std::map<std::string, TestCase>& faults() const noexcept { return faults_; }

  /// Distinct archived tests with the targets and faults they are kept for.
  std::vector<SuiteEntry> suite() const;

 private:
  std::map<std::string, TestCase> targets_;
  std::map<std::string, TestCase> faults_;
};

struct CoverageSample {
  double elapsed_s = 0.0;
  std::uint64_t generation = 0;
  std::size_t covered_targets = 0;
  std::size_t faults = 0;
};

struct RunReport {
  std::vector<CoverageSample> samples;
  std::uint64_t generations = 0;
  std::uint64_t evaluations = 0;
  std::set<std::string> covered_targets;
  std::set<std::string> faults;
  /// Wall time of each model update, in seconds.
  std::vector<double> learning_seconds;
  /// Elapsed times are wall-clock seconds, otherwise logical (ticks / 1000).
  bool wall_clock = false;
};

struct RunResult {
  std::vector<SuiteEntry> suite;
  RunReport report;
  Automaton model;
  TemplateTree templates;
};

/// The model-inference search loop.
///
/// initialize() samples, executes, learns and scores the first population;
/// each evolve_generation() breeds S offspring, executes them, feeds their
/// traces to the model and keeps the fittest S of parents and offspring,
/// re-scoring the parents against the updated model. In random mode every
/// generation is S fresh samples and no model is learned.
class Engine {
 public:
  Engine(EngineConfig config, Executor& executor);

  void initialize();
  void evolve_generation();
  bool budget_exhausted() const;

  const std::vector<Individual>& population() const noexcept { return population_; }
  const Automaton& model() const noexcept { return model_; }
  const TemplateTree& templates() const noexcept { return templates_; }
  const Archive& archive() const noexcept { return archive_; }
  const RunReport& report() const noexcept { return report_; }
  std::uint64_t generation() const noexcept { return generation_; }
  const EngineConfig& config() const noexcept { return config_; }

  /// Re-scores `individual` against the current model.
  void score(Individual& individual) const;

  RunResult finish() &&;

 private:
  std::vector<Individual> evaluate(std::vector<TestCase> tests);
  std::vector<TestCase> breed();
  double elapsed() const;
  void record_sample(bool force);

  EngineConfig config_;
  Executor& executor_;
  Rng rng_;
  Automaton model_;
  TemplateTree templates_;
  Archive archive_;
  std::vector<Individual> population_;
  RunReport report_;
  std::uint64_t generation_ = 0;
  bool initialized_ = false;
  std::chrono::steady_clock::time_point wall_start_;
  Timestamp logical_start_ = 0;
  double last_sample_second_ = -1.0;
};

/// Runs the configured algorithm until the budget is exhausted.
RunResult run(const EngineConfig& config, Executor& executor);
/// Same harness with every individual sampled at random.
RunResult run_random_baseline(EngineConfig config, Executor& executor);

std::string_view to_string(Algorithm algorithm);

}  // namespace mish
