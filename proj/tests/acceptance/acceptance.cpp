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

// Acceptance checks. One PASS/FAIL line per criterion; `--criterion N` runs a single one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "mish/automaton.hpp"
#include "mish/engine.hpp"
#include "mish/fitness.hpp"
#include "mish/scenario.hpp"
#include "mish/simulator.hpp"
#include "mish/stats.hpp"
#include "mish/suite_io.hpp"
#include "mish/trace.hpp"

namespace {

using namespace mish;
namespace fs = std::filesystem;
using Seq = std::vector<TemplateId>;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, value);
  return buffer;
}

// 1
Outcome lm_oracle() {
  const std::vector<std::uint64_t> path{15, 15, 6, 15};
  const double value = fitness_lm(path).value;
  return {value == 0.25, "fitness_lm([15,15,6,15]) = " + fmt("%.17g", value) + ", expected 0.25"};
}

// 2
Outcome ws_oracle() {
  const std::vector<std::uint64_t> path{15, 15, 6, 15};
  const double value = fitness_ws(path).value;
  return {value == 1.0 / 141.0 && std::abs(value - 0.00709) < 5e-6,
          "fitness_ws([15,15,6,15]) = " + fmt("%.5f", value) + ", expected 1/141"};
}

// 3
Outcome loop_replay() {
  const Automaton model =
      Automaton::load(read_text_file(fs::path(MISH_FIXTURE_DIR) / "models" / "loop.model"));
  const Path path = model.replay(Seq{10, 7, 5, 10});
  std::string shown;
  for (StateId s : path) shown += (shown.empty() ? "" : ",") + std::to_string(s);
  return {path == Path{11, 12, 13, 11}, "replay([10,7,5,10]) = [" + shown + "], expected [11,12,13,11]"};
}

// 4
Outcome ingest_latency() {
  constexpr std::size_t kBatches = 100;
  constexpr std::size_t kBatchSize = 20;
  constexpr std::size_t kMaxLength = 10;
  constexpr TemplateId kAlphabet = 128;
  constexpr double kLimitSeconds = 0.050;

  std::mt19937_64 rng(4);
  Automaton model;
  std::vector<double> seconds;
  for (std::size_t b = 0; b < kBatches; ++b) {
    std::vector<Seq> batch(kBatchSize);
    for (auto& trace : batch) {
      trace.resize(1 + rng() % kMaxLength);
      for (auto& s : trace) s = static_cast<TemplateId>(rng() % kAlphabet);
    }
    const auto start = std::chrono::steady_clock::now();
    model.ingest_batch(std::span<const Seq>(batch));
    seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  const double median = stats::median(seconds);
  return {median < kLimitSeconds, "median ingest_batch time " + fmt("%.6f", median) + " s over 100 batches, limit 0.050 s"};
}

// 5
bool equals_trie(const Automaton& model, const std::vector<Seq>& traces) {
  struct Node {
    std::uint64_t visits = 0;
    std::map<TemplateId, std::pair<std::uint64_t, std::size_t>> out;
  };
  std::vector<Node> trie(1);
  for (const auto& trace : traces) {
    std::size_t at = 0;
    ++trie[0].visits;
    for (TemplateId s : trace) {
      auto it = trie[at].out.find(s);
      if (it == trie[at].out.end()) {
        trie.emplace_back();
        it = trie[at].out.emplace(s, std::make_pair(0u, trie.size() - 1)).first;
      }
      ++it->second.first;
      at = it->second.second;
      ++trie[at].visits;
    }
  }
  if (model.state_count() != trie.size()) return false;
  std::vector<std::pair<StateId, std::size_t>> stack{{model.root(), 0}};
  while (!stack.empty()) {
    const auto [id, index] = stack.back();
    stack.pop_back();
    const State& state = model.state(id);
    if (state.visits != trie[index].visits || state.out.size() != trie[index].out.size()) return false;
    for (const auto& [symbol, edge] : trie[index].out) {
      auto it = state.out.find(symbol);
      if (it == state.out.end() || it->second.count != edge.first) return false;
      stack.emplace_back(it->second.target, edge.second);
    }
  }
  return true;
}

Outcome automaton_invariants() {
  constexpr int kIngests = 1000;
  std::mt19937_64 rng(5);
  Automaton model;
  Automaton twin;
  std::uint64_t symbols = 0;
  for (int i = 0; i < kIngests; ++i) {
    std::vector<Seq> batch(1 + rng() % 20);
    const TemplateId alphabet = static_cast<TemplateId>(2 + rng() % 12);
    for (auto& trace : batch) {
      trace.resize(1 + rng() % 10);
      for (auto& s : trace) s = static_cast<TemplateId>(rng() % alphabet);
      symbols += trace.size();
    }
    model.ingest_batch(std::span<const Seq>(batch));
    twin.ingest_batch(std::span<const Seq>(batch));
    const auto problems = model.validate();
    if (!problems.empty()) return {false, "after ingest " + std::to_string(i) + ": " + problems.front()};
    if (model.total_symbols() != symbols)
      return {false, "mass conservation broken after ingest " + std::to_string(i)};
    for (const auto& trace : batch) {
      try {
        model.replay(trace);
      } catch (const std::exception& e) {
        return {false, "same-batch replay failed after ingest " + std::to_string(i) + ": " + e.what()};
      }
    }
  }
  if (model.dump() != twin.dump()) return {false, "two identical ingest streams diverged"};

  MergeConfig no_merge;
  no_merge.enabled = false;
  for (int round = 0; round < 50; ++round) {
    Automaton plain(no_merge);
    std::vector<Seq> all;
    while (all.size() < 50) {
      std::vector<Seq> batch(1 + rng() % 10);
      for (auto& trace : batch) {
        trace.resize(1 + rng() % 8);
        for (auto& s : trace) s = static_cast<TemplateId>(rng() % 5);
      }
      if (all.size() + batch.size() > 50) batch.resize(50 - all.size());
      plain.ingest_batch(std::span<const Seq>(batch));
      all.insert(all.end(), batch.begin(), batch.end());
    }
    if (!equals_trie(plain, all)) return {false, "unmerged model differs from the prefix trie in round " + std::to_string(round)};
  }
  return {true, "1000 ingests valid (" + std::to_string(model.state_count()) + " states, " +
                    std::to_string(model.merges()) + " merges); 50 trie comparisons equal"};
}

// 6 and 7 share one experiment
struct AlgorithmRuns {
  std::vector<double> covered;
  std::size_t deep = 0;
  std::vector<double> covered_at_20;
};

const std::map<std::string, AlgorithmRuns>& coverage_experiment() {
  static const std::map<std::string, AlgorithmRuns> result = [] {
    constexpr std::uint64_t kSeeds = 20;
    constexpr std::uint64_t kGenerations = 200;
    const SutScenario scenario = resolve_scenario("auth-chain");
    std::map<std::string, AlgorithmRuns> runs;
    for (const std::string label : {"mish-lm", "mish-ws", "random"}) {
      for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        EngineConfig config;
        config.population = 20;
        config.seed = seed;
        config.budget.generations = kGenerations;
        config.algorithm = label == "random" ? Algorithm::Random : Algorithm::Mish;
        config.fitness = label == "mish-ws" ? FitnessKind::WeightedSum : FitnessKind::LowerThanMedian;
        Simulator sim(scenario);
        const RunResult r = run(config, sim);
        AlgorithmRuns& slot = runs[label];
        slot.covered.push_back(static_cast<double>(r.report.covered_targets.size()));
        slot.deep += r.report.covered_targets.count("admin:orders:deep");
        slot.covered_at_20.push_back(static_cast<double>(r.report.samples.at(20).covered_targets));
      }
    }
    return runs;
  }();
  return result;
}

Outcome mechanism_acceptance() {
  constexpr double kMinA12 = 0.7;
  constexpr std::size_t kMinDeepRuns = 16;
  const auto& runs = coverage_experiment();
  const auto& random = runs.at("random");
  const double random_median = stats::median(random.covered);
  bool pass = true;
  std::string detail = "random median " + fmt("%.1f", random_median) + ";";
  for (const char* label : {"mish-lm", "mish-ws"}) {
    const auto& mish = runs.at(label);
    const double median = stats::median(mish.covered);
    const double a12 = stats::vargha_delaney_a12(mish.covered, random.covered).a12;
    const bool ok = median >= random_median && a12 >= kMinA12 && mish.deep >= kMinDeepRuns;
    pass = pass && ok;
    detail += std::string(" ") + label + " median " + fmt("%.1f", median) + " A12 " + fmt("%.3f", a12) +
              " deep " + std::to_string(mish.deep) + "/20;";
  }
  detail += " thresholds: median >= random, A12 >= 0.7, deep >= 16/20";
  return {pass, detail};
}

Outcome early_coverage() {
  const auto& runs = coverage_experiment();
  auto mean = [](const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
  };
  const double random = mean(runs.at("random").covered_at_20);
  const double lm = mean(runs.at("mish-lm").covered_at_20);
  const double ws = mean(runs.at("mish-ws").covered_at_20);
  return {lm >= random && ws >= random, "mean covered targets at generation 20: mish-lm " + fmt("%.2f", lm) +
                                            ", mish-ws " + fmt("%.2f", ws) + ", random " + fmt("%.2f", random)};
}

// 8
struct Reference {
  std::vector<double> a;
  std::vector<double> b;
  double p;
  double a12;
};

const std::vector<Reference> kReference = {
#include "../unit/stats_reference.inc"
};

Outcome stats_oracles() {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> a(1 + rng() % 15);
    std::vector<double> b(1 + rng() % 15);
    for (auto& x : a) x = static_cast<double>(rng() % 12);
    for (auto& x : b) x = static_cast<double>(rng() % 12);
    const double ab = stats::vargha_delaney_a12(a, b).a12;
    const double ba = stats::vargha_delaney_a12(b, a).a12;
    if (std::abs(ab + ba - 1.0) > 1e-12) return {false, "A12 symmetry broken on pair " + std::to_string(i)};
    if (stats::vargha_delaney_a12(a, a).a12 != 0.5) return {false, "A12 identity broken on pair " + std::to_string(i)};
  }
  if (kReference.size() != 25) return {false, "expected 25 reference vectors"};
  double worst = 0.0;
  for (std::size_t i = 0; i < kReference.size(); ++i) {
    const auto& r = kReference[i];
    worst = std::max(worst, std::abs(stats::wilcoxon_rank_sum(r.a, r.b) - r.p));
    if (stats::vargha_delaney_a12(r.a, r.b).a12 != r.a12)
      return {false, "A12 mismatch on reference vector " + std::to_string(i)};
  }
  return {worst <= 1e-9, "10000 property pairs hold; 25 reference vectors, max |dp| = " + fmt("%.3g", worst)};
}

// 9
Outcome none_trace() {
  Simulator sim(resolve_scenario("flat-api"));
  const TestCase silent{{RestCall{HttpMethod::Get, "/v2/languages", {}, false}}};
  const ExecutionResult result = sim.execute(silent, "silent");
  if (!result.events.empty()) return {false, "silent endpoint emitted log events"};
  TemplateTree tree;
  const auto traces = build_traces(result.events, std::vector<ExecutionWindow>{result.window}, tree);
  if (traces.size() != 1 || traces[0].symbols != Seq{kNoneTemplate}) return {false, "trace is not [\"None\"]"};
  Automaton model;
  model.ingest_batch(std::span<const Trace>(traces));
  const auto counts = model.visit_counts(model.replay(traces[0].symbols));
  const double lm = fitness_lm(counts).value;
  const double ws = fitness_ws(counts).value;
  if (!std::isfinite(lm) || !std::isfinite(ws)) return {false, "fitness undefined for the None trace"};

  // the same rule inside a full run
  EngineConfig config;
  config.budget.generations = 10;
  Simulator run_sim(resolve_scenario("flat-api"));
  Engine engine(config, run_sim);
  engine.initialize();
  std::size_t none_seen = 0;
  while (!engine.budget_exhausted()) {
    engine.evolve_generation();
    for (const auto& ind : engine.population()) {
      if (ind.trace.symbols.empty() || !std::isfinite(ind.fitness.value))
        return {false, "individual without trace or fitness in generation " + std::to_string(engine.generation())};
      none_seen += ind.trace.symbols == Seq{kNoneTemplate};
    }
  }
  return {none_seen > 0, "silent call trace [\"None\"], fitness lm " + fmt("%.3g", lm) + " ws " + fmt("%.3g", ws) +
                             "; None-trace individuals seen in run: " + std::to_string(none_seen)};
}

// 10
std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) files[fs::relative(entry.path(), root).string()] = read_text_file(entry.path());
  }
  return files;
}

Outcome experiment_determinism() {
  const fs::path base = fs::temp_directory_path() / "mish-acceptance-determinism";
  fs::remove_all(base);
  cli::ExperimentOptions options;
  options.target.scenario = "auth-chain";
  options.search.generations = 100;
  options.search.seed = 41;
  options.repeats = 5;
  std::ostringstream out;
  std::ostringstream err;
  options.out = base / "first";
  options.jobs = 1;
  if (cli::cmd_experiment(options, out, err) != 0) return {false, "first experiment failed: " + err.str()};
  options.out = base / "second";
  options.jobs = 3;
  if (cli::cmd_experiment(options, out, err) != 0) return {false, "second experiment failed: " + err.str()};
  const auto a = snapshot(base / "first");
  const auto b = snapshot(base / "second");
  fs::remove_all(base);
  if (a.size() != b.size()) return {false, "output file sets differ"};
  for (const auto& [name, text] : a) {
    auto it = b.find(name);
    if (it == b.end() || it->second != text) return {false, "file differs: " + name};
  }
  return {true, std::to_string(a.size()) + " output files byte-identical across two invocations"};
}

const std::vector<std::pair<int, std::function<Outcome()>>> kCriteria = {
    {1, lm_oracle},          {2, ws_oracle},        {3, loop_replay},
    {4, ingest_latency},     {5, automaton_invariants}, {6, mechanism_acceptance},
    {7, early_coverage},     {8, stats_oracles},    {9, none_trace},
    {10, experiment_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  bool all_pass = true;
  for (const auto& [number, check] : kCriteria) {
    if (only != 0 && number != only) continue;
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d: %s\n", outcome.pass ? "PASS" : "FAIL", number, outcome.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
