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

#include "mish/engine.hpp"

#include <cmath>

#include "mish/error.hpp"
#include "mish/trace.hpp"

namespace mish {

std::string_view to_string(Algorithm algorithm) {
  return algorithm == Algorithm::Mish ? "mish" : "random";
}

void EngineConfig::validate() const {
  if (population == 0) throw InvalidConfig("population size must be positive");
  if (tournament == 0) throw InvalidConfig("tournament size must be positive");
  if (max_len == 0) throw InvalidConfig("max test length must be positive");
  if (!(sample_probability >= 0.0 && sample_probability <= 1.0))
    throw InvalidConfig("sample probability must lie in [0, 1]");
  if (!budget.generations && !budget.seconds) throw InvalidConfig("no search budget given");
  if (budget.seconds && !(*budget.seconds >= 0.0)) throw InvalidConfig("negative time budget");
}

void Archive::update(const TestCase& test, const ExecutionResult& result) {
  auto keep_shortest = [&](std::map<std::string, TestCase>& store, const std::string& key) {
    auto it = store.find(key);
    if (it == store.end()) {
      store.emplace(key, test);
    } else if (test.calls.size() < it->second.calls.size()) {
      it->second = test;
    }
  };
  for (const auto& target : result.covered) keep_shortest(targets_, target);
  for (const auto& fault : result.faults) keep_shortest(faults_, fault);
}

std::vector<SuiteEntry> Archive::suite() const {
  std::vector<SuiteEntry> entries;
  auto slot = [&](const TestCase& test) -> SuiteEntry& {
    for (auto& entry : entries) {
      if (entry.test == test) return entry;
    }
    entries.push_back(SuiteEntry{test, {}, {}});
    return entries.back();
  };
  for (const auto& [target, test] : targets_) slot(test).covers.push_back(target);
  for (const auto& [fault, test] : faults_) slot(test).faults.push_back(fault);
  return entries;
}

Engine::Engine(EngineConfig config, Executor& executor)
    : config_(config),
      executor_(executor),
      rng_(config.seed),
      model_(config.merge),
      templates_(config.templates) {
  config_.validate();
  if (executor_.surface().endpoints.empty()) throw EmptyScenario();
  report_.wall_clock = config_.budget.seconds.has_value();
}

double Engine::elapsed() const {
  if (report_.wall_clock) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start_).count();
  }
  return static_cast<double>(executor_.now() - logical_start_) / 1000.0;
}

void Engine::record_sample(bool force) {
  const double now = elapsed();
  if (report_.wall_clock && !force && std::floor(now) <= last_sample_second_) return;
  last_sample_second_ = std::floor(now);
  report_.samples.push_back(
      CoverageSample{now, generation_, archive_.covered_count(), archive_.fault_count()});
}

void Engine::score(Individual& individual) const {
  const Path path = model_.replay(individual.trace.symbols);
  individual.fitness = compute_fitness(config_.fitness, model_.visit_counts(path));
}

std::vector<Individual> Engine::evaluate(std::vector<TestCase> tests) {
  std::vector<Individual> individuals(tests.size());
  std::vector<LogEvent> events;
  std::vector<ExecutionWindow> windows;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const std::string id = "g" + std::to_string(generation_) + "-" + std::to_string(i);
    ExecutionResult result = executor_.execute(tests[i], id);
    archive_.update(tests[i], result);
    ++report_.evaluations;
    events.insert(events.end(), std::make_move_iterator(result.events.begin()),
                  std::make_move_iterator(result.events.end()));
    windows.push_back(std::move(result.window));
    individuals[i].test = std::move(tests[i]);
    individuals[i].birth_generation = generation_;
  }
  if (config_.algorithm == Algorithm::Random) return individuals;

  std::vector<Trace> traces = build_traces(events, windows, templates_);
  const auto started = std::chrono::steady_clock::now();
  model_.ingest_batch(traces);
  report_.learning_seconds.push_back(
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());
  for (std::size_t i = 0; i < individuals.size(); ++i) {
    individuals[i].trace = std::move(traces[i]);
    score(individuals[i]);
  }
  return individuals;
}

std::vector<TestCase> Engine::breed() {
  const ApiSurface& surface = executor_.surface();
  std::vector<TestCase> offspring;
  offspring.reserve(config_.population);
  std::bernoulli_distribution fresh(config_.sample_probability);
  for (std::size_t i = 0; i < config_.population; ++i) {
    if (config_.algorithm == Algorithm::Random || population_.empty() || fresh(rng_)) {
      offspring.push_back(sample_random(surface, rng_, config_.max_len));
    } else {
      const Individual& parent = tournament_select(population_, config_.tournament, rng_);
      offspring.push_back(mutate(parent.test, surface, rng_, config_.max_len));
    }
  }
  return offspring;
}

void Engine::initialize() {
  if (initialized_) return;
  initialized_ = true;
  wall_start_ = std::chrono::steady_clock::now();
  logical_start_ = executor_.now();
  std::vector<TestCase> tests;
  for (std::size_t i = 0; i < config_.population; ++i)
    tests.push_back(sample_random(executor_.surface(), rng_, config_.max_len));
  population_ = evaluate(std::move(tests));
  record_sample(true);
}

void Engine::evolve_generation() {
  if (!initialized_) initialize();
  ++generation_;
  std::vector<Individual> offspring = evaluate(breed());
  if (config_.algorithm == Algorithm::Mish) {
    for (auto& parent : population_) score(parent);
    population_ = select_survivors(std::move(population_), std::move(offspring), config_.population);
  } else {
    population_ = std::move(offspring);
  }
  record_sample(false);
}

bool Engine::budget_exhausted() const {
  if (config_.budget.generations && generation_ >= *config_.budget.generations) return true;
  if (config_.budget.seconds) {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start_).count();
    if (wall >= *config_.budget.seconds) return true;
  }
  return false;
}

RunResult Engine::finish() && {
  if (report_.wall_clock && (report_.samples.empty() || report_.samples.back().generation != generation_))
    record_sample(true);
  report_.generations = generation_;
  for (const auto& [target, test] : archive_.targets()) report_.covered_targets.insert(target);
  for (const auto& [fault, test] : archive_.faults()) report_.faults.insert(fault);
  return RunResult{archive_.suite(), std::move(report_), std::move(model_), std::move(templates_)};
}

RunResult run(const EngineConfig& config, Executor& executor) {
  Engine engine(config, executor);
  engine.initialize();
  while (!engine.budget_exhausted()) engine.evolve_generation();
  return std::move(engine).finish();
}

RunResult run_random_baseline(EngineConfig config, Executor& executor) {
  config.algorithm = Algorithm::Random;
  return run(config, executor);
}

}  // namespace mish
