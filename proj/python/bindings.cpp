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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "mish/automaton.hpp"
#include "mish/engine.hpp"
#include "mish/error.hpp"
#include "mish/fitness.hpp"
#include "mish/scenario.hpp"
#include "mish/simulator.hpp"
#include "mish/stats.hpp"
#include "mish/suite_io.hpp"
#include "mish/trace.hpp"

namespace py = pybind11;
using namespace mish;

namespace {

using EventTuple = std::tuple<Timestamp, std::string, std::string>;
using WindowTuple = std::tuple<std::string, Timestamp, Timestamp>;

std::vector<std::pair<std::string, std::vector<TemplateId>>> py_build_traces(
    const std::vector<EventTuple>& events, const std::vector<WindowTuple>& windows, TemplateTree& tree) {
  std::vector<LogEvent> ev;
  for (const auto& [t, service, message] : events) ev.push_back(LogEvent{t, service, message});
  std::vector<ExecutionWindow> win;
  for (const auto& [id, start, end] : windows) win.push_back(ExecutionWindow{id, start, end});
  std::vector<std::pair<std::string, std::vector<TemplateId>>> out;
  for (auto& trace : build_traces(ev, win, tree)) out.emplace_back(trace.test_id, std::move(trace.symbols));
  return out;
}

py::dict report_dict(const RunResult& result, const std::string& scenario) {
  py::list samples;
  for (const auto& s : result.report.samples)
    samples.append(py::make_tuple(s.elapsed_s, s.generation, s.covered_targets, s.faults));
  py::dict d;
  d["covered_targets"] = result.report.covered_targets;
  d["faults"] = result.report.faults;
  d["generations"] = result.report.generations;
  d["evaluations"] = result.report.evaluations;
  d["samples"] = samples;
  d["report_csv"] = write_report_csv(result.report);
  d["suite_json"] = write_suite_json(result.suite, scenario);
  d["model_dot"] = result.model.to_dot();
  return d;
}

py::dict py_run(const std::string& scenario, const std::string& algorithm, const std::string& fitness,
                std::uint64_t generations, std::uint64_t seed, std::size_t population, double alpha,
                std::uint64_t min_count) {
  EngineConfig config;
  if (algorithm == "random") {
    config.algorithm = Algorithm::Random;
  } else if (algorithm != "mish") {
    throw InvalidConfig("algorithm must be 'mish' or 'random'");
  }
  config.fitness = parse_fitness_kind(fitness);
  config.budget.generations = generations;
  config.seed = seed;
  config.population = population;
  config.merge.alpha = alpha;
  config.merge.min_count = min_count;
  Simulator sim(resolve_scenario(scenario));
  std::optional<RunResult> result;
  {
    py::gil_scoped_release release;
    result.emplace(run(config, sim));
  }
  return report_dict(*result, sim.scenario().name);
}

}  // namespace

PYBIND11_MODULE(_mish, m) {
  m.doc() = "Model-inference search for REST API test generation";

  auto base = py::register_exception<Error>(m, "MishError", PyExc_RuntimeError);
  py::register_exception<InvalidConfig>(m, "InvalidConfig", base.ptr());
  py::register_exception<UnknownTransition>(m, "UnknownTransition", base.ptr());
  py::register_exception<OverlappingWindows>(m, "OverlappingWindows", base.ptr());
  py::register_exception<UnknownEndpoint>(m, "UnknownEndpoint", base.ptr());
  py::register_exception<EmptyScenario>(m, "EmptyScenario", base.ptr());

  m.attr("NONE_TEMPLATE") = kNoneTemplate;

  py::class_<TemplateTree>(m, "TemplateTree")
      .def(py::init([](std::size_t depth, double similarity_threshold, std::size_t max_children) {
             return TemplateTree(TemplateTreeConfig{depth, similarity_threshold, max_children, true});
           }),
           py::arg("depth") = 4, py::arg("similarity_threshold") = 0.4, py::arg("max_children") = 100)
      .def("ingest", &TemplateTree::ingest, py::arg("message"))
      .def("template_count", &TemplateTree::template_count)
      .def("templates",
           [](const TemplateTree& t) {
             std::vector<std::pair<TemplateId, std::vector<std::string>>> out;
             for (const auto& tmpl : t.templates()) out.emplace_back(tmpl.id, tmpl.tokens);
             return out;
           })
      .def("export_text", &TemplateTree::export_text);

  m.def("build_traces", &py_build_traces, py::arg("events"), py::arg("windows"), py::arg("tree"),
        "events: (timestamp, service, message); windows: (test_id, start, end).");

  py::class_<Automaton>(m, "Automaton")
      .def(py::init([](double alpha, std::uint64_t min_count, bool merge) {
             return Automaton(MergeConfig{alpha, min_count, merge});
           }),
           py::arg("alpha") = 0.05, py::arg("min_count") = 10, py::arg("merge") = true)
      .def("ingest_batch",
           [](Automaton& a, const std::vector<std::vector<TemplateId>>& traces) {
             a.ingest_batch(std::span<const std::vector<TemplateId>>(traces));
           },
           py::arg("traces"))
      .def("replay", [](const Automaton& a, const std::vector<TemplateId>& s) { return a.replay(s); })
      .def("visit_counts", &Automaton::visit_counts)
      .def_property_readonly("state_count", &Automaton::state_count)
      .def_property_readonly("total_symbols", &Automaton::total_symbols)
      .def_property_readonly("total_traces", &Automaton::total_traces)
      .def_property_readonly("merges", &Automaton::merges)
      .def("validate", &Automaton::validate)
      .def("to_dot", &Automaton::to_dot)
      .def("dump", &Automaton::dump)
      .def_static("load", [](const std::string& text) { return Automaton::load(text); });

  m.def("fitness_lm", [](const std::vector<std::uint64_t>& c) { return fitness_lm(c).value; });
  m.def("fitness_ws", [](const std::vector<std::uint64_t>& c) { return fitness_ws(c).value; });

  m.def("builtin_scenarios", &builtin_scenarios);
  m.def("scenario_targets", [](const std::string& s) { return list_targets(resolve_scenario(s)); });
  m.def("run", &py_run, py::arg("scenario"), py::arg("algorithm") = "mish", py::arg("fitness") = "lm",
        py::arg("generations") = 50, py::arg("seed") = 0, py::arg("population") = 20,
        py::arg("alpha") = 0.05, py::arg("min_count") = 10);

  m.def("wilcoxon_rank_sum", [](const std::vector<double>& a, const std::vector<double>& b) {
    return stats::wilcoxon_rank_sum(a, b);
  });
  m.def("vargha_delaney_a12", [](const std::vector<double>& a, const std::vector<double>& b) {
    const auto e = stats::vargha_delaney_a12(a, b);
    return std::make_pair(e.a12, std::string(stats::to_string(e.magnitude)));
  });
  m.def("median", [](const std::vector<double>& v) { return stats::median(v); });
  m.def("iqr", [](const std::vector<double>& v) { return stats::iqr(v); });
}
