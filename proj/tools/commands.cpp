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

#include "commands.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "mish/error.hpp"
#include "mish/http_adapter.hpp"
#include "mish/simulator.hpp"
#include "mish/stats.hpp"
#include "mish/suite_io.hpp"

namespace mish::cli {

namespace {

struct Target {
  std::unique_ptr<Executor> executor;
  std::string name;
  bool live = false;
};

Target open_target(const TargetOptions& options) {
  if (!options.scenario.empty() && !options.live_config.empty())
    throw InvalidConfig("--scenario and --live-config are mutually exclusive");
  if (!options.live_config.empty()) {
    LiveTargetConfig config = LiveTargetConfig::load_file(options.live_config);
    std::string name = config.name;
    return {std::make_unique<LiveExecutor>(std::move(config)), std::move(name), true};
  }
  if (options.scenario.empty()) throw InvalidConfig("one of --scenario or --live-config is required");
  SutScenario scenario = resolve_scenario(options.scenario);
  std::string name = scenario.name;
  return {std::make_unique<Simulator>(std::move(scenario)), std::move(name), false};
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_run_outputs(const std::filesystem::path& dir, const RunResult& result, const std::string& target,
                       bool model_dump, bool templates) {
  write_text_file(dir / "suite.json", write_suite_json(result.suite, target));
  write_text_file(dir / "report.csv", write_report_csv(result.report));
  write_text_file(dir / "model.dot", result.model.to_dot());
  if (model_dump) write_text_file(dir / "model.txt", result.model.dump());
  if (templates) write_text_file(dir / "templates.txt", result.templates.export_text());
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidConfig& e) {
    err << "mish: configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "mish: " << e.what() << '\n';
    return 1;
  }
}

struct RunSummary {
  std::string algorithm;
  std::uint64_t seed = 0;
  RunReport report;
};

void write_experiment_tables(const std::filesystem::path& dir, const std::vector<AlgorithmChoice>& algorithms,
                             const std::vector<RunSummary>& runs) {
  std::ostringstream summary;
  summary << "algorithm,seed,covered_targets,faults,generations,evaluations\n";
  for (const auto& run : runs) {
    summary << run.algorithm << ',' << run.seed << ',' << run.report.covered_targets.size() << ','
            << run.report.faults.size() << ',' << run.report.generations << ',' << run.report.evaluations
            << '\n';
  }
  write_text_file(dir / "summary.csv", summary.str());

  std::map<std::string, std::vector<double>> targets;
  std::map<std::string, std::vector<double>> faults;
  for (const auto& run : runs) {
    targets[run.algorithm].push_back(static_cast<double>(run.report.covered_targets.size()));
    faults[run.algorithm].push_back(static_cast<double>(run.report.faults.size()));
  }

  std::string baseline = algorithms.front().label;
  for (const auto& a : algorithms) {
    if (a.algorithm == Algorithm::Random) baseline = a.label;
  }

  std::ostringstream aggregate;
  aggregate << "metric,algorithm,runs,median,iqr,baseline,p_value,a12,magnitude\n";
  for (const auto& [metric, table] : {std::pair{"covered_targets", &targets}, std::pair{"faults", &faults}}) {
    for (const auto& a : algorithms) {
      const auto& values = (*table)[a.label];
      aggregate << metric << ',' << a.label << ',' << values.size() << ',' << format_number(stats::median(values))
                << ',' << format_number(stats::iqr(values)) << ',';
      const auto& base = (*table)[baseline];
      if (a.label == baseline) {
        aggregate << "-,-,-,-\n";
        continue;
      }
      aggregate << baseline << ',';
      if (values.size() >= 3 && base.size() >= 3) {
        aggregate << format_number(stats::wilcoxon_rank_sum(values, base)) << ',';
      } else {
        aggregate << "NA,";
      }
      const auto effect = stats::vargha_delaney_a12(values, base);
      aggregate << format_number(effect.a12) << ',' << stats::to_string(effect.magnitude) << '\n';
    }
  }
  write_text_file(dir / "aggregate.csv", aggregate.str());

  // mean coverage per generation, one column pair per algorithm
  std::ostringstream coverage;
  coverage << "algorithm,generation,mean_covered_targets,mean_faults\n";
  for (const auto& a : algorithms) {
    std::map<std::uint64_t, std::pair<double, double>> sums;
    std::map<std::uint64_t, std::size_t> counts;
    for (const auto& run : runs) {
      if (run.algorithm != a.label) continue;
      for (const auto& s : run.report.samples) {
        auto& [t, f] = sums[s.generation];
        t += static_cast<double>(s.covered_targets);
        f += static_cast<double>(s.faults);
        ++counts[s.generation];
      }
    }
    for (const auto& [generation, sum] : sums) {
      const double n = static_cast<double>(counts[generation]);
      coverage << a.label << ',' << generation << ',' << format_number(sum.first / n) << ','
               << format_number(sum.second / n) << '\n';
    }
  }
  write_text_file(dir / "coverage.csv", coverage.str());

  std::ostringstream plot;
  plot << "# gnuplot -p coverage.gp\nset datafile separator ','\nset key bottom right\n"
       << "set xlabel 'generation'\nset ylabel 'mean covered targets'\nplot \\\n";
  for (std::size_t i = 0; i < algorithms.size(); ++i) {
    plot << "  '< grep ^" << algorithms[i].label << ", coverage.csv' using 2:3 with lines title '"
         << algorithms[i].label << "'" << (i + 1 < algorithms.size() ? ", \\\n" : "\n");
  }
  write_text_file(dir / "coverage.gp", plot.str());
}

}  // namespace

AlgorithmChoice parse_algorithm(const std::string& text, const std::optional<std::string>& fitness) {
  if (text == "random") return {"random", Algorithm::Random, FitnessKind::LowerThanMedian};
  if (text == "mish-lm") return {"mish-lm", Algorithm::Mish, FitnessKind::LowerThanMedian};
  if (text == "mish-ws") return {"mish-ws", Algorithm::Mish, FitnessKind::WeightedSum};
  if (text == "mish") {
    const FitnessKind kind = parse_fitness_kind(fitness.value_or("lm"));
    return {"mish-" + std::string(to_string(kind)), Algorithm::Mish, kind};
  }
  throw InvalidConfig("unknown algorithm '" + text + "' (expected mish-lm, mish-ws, mish or random)");
}

EngineConfig make_engine_config(const SearchOptions& search, const AlgorithmChoice& choice) {
  EngineConfig config;
  config.algorithm = choice.algorithm;
  config.fitness = choice.fitness;
  config.population = search.population;
  config.seed = search.seed;
  config.budget.generations = search.generations;
  config.budget.seconds = search.seconds;
  config.merge.alpha = search.alpha;
  config.merge.min_count = search.merge_min_count;
  config.validate();
  return config;
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const AlgorithmChoice choice = parse_algorithm(options.algorithm, options.fitness);
    const EngineConfig config = make_engine_config(options.search, choice);
    Target target = open_target(options.target);
    const RunResult result = run(config, *target.executor);
    write_run_outputs(options.out, result, target.name, options.emit_model_dump, options.emit_templates);
    out << "targets=" << result.report.covered_targets.size() << " faults=" << result.report.faults.size()
        << " generations=" << result.report.generations << '\n';
    return 0;
  });
}

int cmd_experiment(const ExperimentOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.repeats == 0) throw InvalidConfig("--repeats must be at least 1");
    if (options.algorithms.empty()) throw InvalidConfig("at least one --algo is required");
    std::vector<AlgorithmChoice> algorithms;
    for (const auto& name : options.algorithms) algorithms.push_back(parse_algorithm(name, std::nullopt));
    for (const auto& a : algorithms) make_engine_config(options.search, a);
    const bool live = !options.target.live_config.empty();
    open_target(options.target);  // fail fast on a bad target

    struct Job {
      AlgorithmChoice algorithm;
      std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const auto& a : algorithms) {
      for (std::size_t i = 0; i < options.repeats; ++i) jobs.push_back({a, options.search.seed + i});
    }

    std::filesystem::create_directories(options.out);
    std::filesystem::remove(options.out / "PARTIAL");
    std::vector<RunSummary> summaries(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::string first_error;
    bool config_error = false;

    auto worker = [&] {
      for (std::size_t i; !failed && (i = next++) < jobs.size();) {
        const Job& job = jobs[i];
        try {
          SearchOptions search = options.search;
          search.seed = job.seed;
          Target target = open_target(options.target);  // fresh system per run
          RunResult result = run(make_engine_config(search, job.algorithm), *target.executor);
          const auto dir = options.out / "runs" / job.algorithm.label / ("seed-" + std::to_string(job.seed));
          write_run_outputs(dir, result, target.name, false, false);
          summaries[i] = RunSummary{job.algorithm.label, job.seed, std::move(result.report)};
        } catch (const std::exception& e) {
          std::lock_guard lock(error_mutex);
          if (!failed.exchange(true)) {
            first_error = job.algorithm.label + " seed " + std::to_string(job.seed) + ": " + e.what();
            config_error = dynamic_cast<const InvalidConfig*>(&e) != nullptr;
          }
        }
      }
    };
    const std::size_t slots = live ? 1 : std::max<std::size_t>(1, std::min(options.jobs, jobs.size()));
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < slots; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    if (failed) {
      write_text_file(options.out / "PARTIAL", first_error + "\n");
      err << "mish: experiment aborted: " << first_error << '\n';
      return config_error ? 2 : 1;
    }
    write_experiment_tables(options.out, algorithms, summaries);
    out << "runs=" << summaries.size() << " out=" << options.out.string() << '\n';
    return 0;
  });
}

int cmd_replay(const ReplayOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<SuiteEntry> suite = read_suite_json(read_text_file(options.suite));
    Target target = open_target(options.target);
    std::set<std::string> covered;
    std::set<std::string> faults;
    std::size_t regressions = 0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
      const ExecutionResult result = target.executor->execute(suite[i].test, "replay-" + std::to_string(i));
      covered.insert(result.covered.begin(), result.covered.end());
      faults.insert(result.faults.begin(), result.faults.end());
      for (const auto& expected : suite[i].covers) {
        if (result.covered.count(expected) == 0) {
          err << "mish: test_" << i << " no longer covers " << expected << '\n';
          ++regressions;
        }
      }
    }
    out << "targets=" << covered.size() << " faults=" << faults.size() << " tests=" << suite.size() << '\n';
    return regressions == 0 ? 0 : 3;
  });
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model-inference search for REST API test generation"};
  app.require_subcommand(1);

  auto add_target = [](CLI::App* cmd, TargetOptions& target) {
    cmd->add_option("--scenario", target.scenario, "Scenario file or built-in scenario name");
    cmd->add_option("--live-config", target.live_config, "Live target configuration file");
  };
  std::optional<std::uint64_t> seed;
  auto add_search = [&seed](CLI::App* cmd, SearchOptions& search) {
    cmd->add_option("--seed", seed, "Random seed (falls back to MISH_SEED, then 0)");
    auto* gens = cmd->add_option("--generations", search.generations, "Generation budget");
    auto* secs = cmd->add_option("--seconds", search.seconds, "Wall-clock budget in seconds");
    gens->excludes(secs);
    cmd->add_option("--population", search.population, "Population size")->capture_default_str();
    cmd->add_option("--alpha", search.alpha, "Merge test significance")->capture_default_str();
    cmd->add_option("--merge-min-count", search.merge_min_count, "Minimum visits before a state is merged")
        ->capture_default_str();
  };

  RunOptions run_options;
  auto* run_cmd = app.add_subcommand("run", "Run one search and write its suite, report and model");
  add_target(run_cmd, run_options.target);
  add_search(run_cmd, run_options.search);
  run_cmd->add_option("--algo", run_options.algorithm, "mish-lm, mish-ws, mish or random")->capture_default_str();
  run_cmd->add_option("--fitness", run_options.fitness, "lm or ws, for --algo mish");
  run_cmd->add_option("--out", run_options.out, "Output directory")->capture_default_str();
  run_cmd->add_flag("--model-dump", run_options.emit_model_dump, "Also write model.txt");
  run_cmd->add_flag("--templates", run_options.emit_templates, "Also write templates.txt");

  ExperimentOptions experiment_options;
  auto* exp_cmd = app.add_subcommand("experiment", "Repeat runs across algorithms and seeds and compare them");
  add_target(exp_cmd, experiment_options.target);
  add_search(exp_cmd, experiment_options.search);
  exp_cmd->add_option("--algo", experiment_options.algorithms, "Algorithms to compare")->delimiter(',');
  exp_cmd->add_option("--repeats", experiment_options.repeats, "Runs per algorithm")->capture_default_str();
  exp_cmd->add_option("--jobs", experiment_options.jobs, "Parallel runs")->capture_default_str();
  exp_cmd->add_option("--out", experiment_options.out, "Output directory")->capture_default_str();

  ReplayOptions replay_options;
  auto* replay_cmd = app.add_subcommand("replay", "Re-execute a test suite and check its coverage");
  add_target(replay_cmd, replay_options.target);
  replay_cmd->add_option("--suite", replay_options.suite, "suite.json to replay")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  auto resolve_seed = [&]() -> std::uint64_t {
    if (seed) return *seed;
    if (const char* env = std::getenv("MISH_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw InvalidConfig(std::string("MISH_SEED is not a number: ") + env);
      }
    }
    return 0;
  };

  try {
    if (run_cmd->parsed()) {
      run_options.search.seed = resolve_seed();
      return cmd_run(run_options, out, err);
    }
    if (exp_cmd->parsed()) {
      experiment_options.search.seed = resolve_seed();
      return cmd_experiment(experiment_options, out, err);
    }
    return cmd_replay(replay_options, out, err);
  } catch (const InvalidConfig& e) {
    err << "mish: configuration error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace mish::cli
