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

#include "mish/automaton.hpp"

#include <cmath>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "mish/error.hpp"

namespace mish {

Automaton::Automaton(MergeConfig config) : config_(config) {
  if (!(config_.alpha > 0.0 && config_.alpha < 1.0))
    throw InvalidConfig("merge significance alpha must lie in (0, 1)");
  nodes_.push_back(Node{State{0, 0, {}}, true, true, 0, 0});
  live_states_ = 1;
}

const State& Automaton::state(StateId id) const {
  if (!contains(id)) throw std::out_of_range("no state " + std::to_string(id));
  return nodes_[id].state;
}

bool Automaton::contains(StateId id) const noexcept {
  return id < nodes_.size() && nodes_[id].alive;
}

std::vector<StateId> Automaton::state_ids() const {
  std::vector<StateId> ids;
  ids.reserve(live_states_);
  for (const auto& node : nodes_) {
    if (node.alive) ids.push_back(node.state.id);
  }
  return ids;
}

std::size_t Automaton::transition_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes_) {
    if (node.alive) n += node.state.out.size();
  }
  return n;
}

StateId Automaton::add_state(StateId parent, TemplateId via) {
  const auto id = static_cast<StateId>(nodes_.size());
  nodes_.push_back(Node{State{id, 0, {}}, true, false, parent, via});
  ++live_states_;
  return id;
}

void Automaton::extend(std::span<const TemplateId> symbols) {
  ++total_traces_;
  ++nodes_[0].state.visits;
  StateId current = 0;
  for (TemplateId symbol : symbols) {
    alphabet_.insert(symbol);
    ++total_symbols_;
    auto& out = nodes_[current].state.out;
    if (auto it = out.find(symbol); it != out.end()) {
      ++it->second.count;
      current = it->second.target;
    } else {
      const StateId fresh = add_state(current, symbol);
      nodes_[current].state.out.emplace(symbol, Transition{fresh, 1});
      current = fresh;
    }
    ++nodes_[current].state.visits;
  }
}

void Automaton::ingest_batch(std::span<const Trace> traces) {
  for (const auto& trace : traces) extend(trace.symbols);
  merge_frontier();
}

void Automaton::ingest_batch(std::span<const std::vector<TemplateId>> traces) {
  for (const auto& symbols : traces) extend(symbols);
  merge_frontier();
}

std::vector<StateId> Automaton::frontier() const {
  std::vector<StateId> blue;
  std::vector<bool> seen(nodes_.size(), false);
  std::deque<StateId> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const StateId id = queue.front();
    queue.pop_front();
    for (const auto& [symbol, edge] : nodes_[id].state.out) {
      if (seen[edge.target]) continue;
      seen[edge.target] = true;
      if (nodes_[edge.target].core) {
        queue.push_back(edge.target);
      } else {
        blue.push_back(edge.target);
      }
    }
  }
  return blue;
}

void Automaton::merge_frontier() {
  if (!config_.enabled) return;
  for (;;) {
    bool progressed = false;
    for (StateId candidate : frontier()) {
      if (nodes_[candidate].state.visits < config_.min_count) continue;
      StateId target = 0;
      for (const auto& node : nodes_) {
        if (node.alive && node.core && node.state.id != 0 && compatible(node.state.id, candidate)) {
          target = node.state.id;
          break;
        }
      }
      if (target != 0) {
        merge(target, candidate);
      } else {
        nodes_[candidate].core = true;
      }
      progressed = true;
      break;
    }
    if (!progressed) return;
  }
}

bool Automaton::compatible(StateId core, StateId candidate) const {
  const State& a = nodes_[core].state;
  const State& b = nodes_[candidate].state;
  if (a.visits < config_.min_count || b.visits < config_.min_count) return true;

  const double na = static_cast<double>(a.visits);
  const double nb = static_cast<double>(b.visits);
  const double bound =
      std::sqrt(0.5 * std::log(2.0 / config_.alpha)) * (1.0 / std::sqrt(na) + 1.0 / std::sqrt(nb));
  auto differs = [&](double fa, double fb) { return std::abs(fa / na - fb / nb) > bound; };

  double out_a = 0.0;
  double out_b = 0.0;
  for (const auto& [symbol, edge] : a.out) {
    out_a += static_cast<double>(edge.count);
    auto it = b.out.find(symbol);
    const double fb = it == b.out.end() ? 0.0 : static_cast<double>(it->second.count);
    if (differs(static_cast<double>(edge.count), fb)) return false;
  }
  for (const auto& [symbol, edge] : b.out) {
    out_b += static_cast<double>(edge.count);
    if (a.out.count(symbol) == 0 && differs(0.0, static_cast<double>(edge.count))) return false;
  }
  // traces ending here
  if (differs(na - out_a, nb - out_b)) return false;

  for (const auto& [symbol, edge] : b.out) {
    auto it = a.out.find(symbol);
    if (it != a.out.end() && !compatible(it->second.target, edge.target)) return false;
  }
  return true;
}

void Automaton::merge(StateId core, StateId candidate) {
  const Node& blue = nodes_[candidate];
  nodes_[blue.parent].state.out.at(blue.via).target = core;

  std::unordered_map<StateId, StateId> lowest;  // survivor -> lowest absorbed id
  struct Pending {
    StateId into;
    StateId from;
  };
  std::vector<Pending> stack{{core, candidate}};
  while (!stack.empty()) {
    const auto [into, from] = stack.back();
    stack.pop_back();
    Node& src = nodes_[from];
    nodes_[into].state.visits += src.state.visits;
    auto moved = std::move(src.state.out);
    src.state.out.clear();
    src.alive = false;
    --live_states_;
    if (from < into) {
      auto [it, inserted] = lowest.emplace(into, from);
      if (!inserted && from < it->second) it->second = from;
    }
    for (const auto& [symbol, edge] : moved) {
      auto& out = nodes_[into].state.out;
      if (auto it = out.find(symbol); it != out.end()) {
        it->second.count += edge.count;
        stack.push_back({it->second.target, edge.target});
      } else {
        out.emplace(symbol, edge);
        Node& child = nodes_[edge.target];
        if (!child.core) {
          child.parent = into;
          child.via = symbol;
        }
      }
    }
  }
  ++merges_;

  for (const auto& [survivor, absorbed] : lowest) renumber(survivor, absorbed);
}

void Automaton::renumber(StateId from, StateId to) {
  nodes_[to] = std::move(nodes_[from]);
  nodes_[to].state.id = to;
  nodes_[from] = Node{};
  nodes_[from].state.id = from;
  for (auto& node : nodes_) {
    if (!node.alive) continue;
    for (auto& [symbol, edge] : node.state.out) {
      if (edge.target == from) edge.target = to;
    }
    if (!node.core && node.parent == from) node.parent = to;
  }
}

Path Automaton::replay(std::span<const TemplateId> symbols) const {
  Path path;
  path.reserve(symbols.size());
  StateId current = 0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const auto& out = nodes_[current].state.out;
    auto it = out.find(symbols[i]);
    if (it == out.end()) throw UnknownTransition(i);
    current = it->second.target;
    path.push_back(current);
  }
  return path;
}

std::vector<std::uint64_t> Automaton::visit_counts(const Path& path) const {
  std::vector<std::uint64_t> counts;
  counts.reserve(path.size());
  for (StateId id : path) counts.push_back(state(id).visits);
  return counts;
}

std::vector<std::string> Automaton::validate() const {
  std::vector<std::string> problems;
  std::vector<std::uint64_t> incoming(nodes_.size(), 0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& node = nodes_[i];
    if (!node.alive) continue;
    if (node.state.id != i) problems.push_back("state slot " + std::to_string(i) + " holds id " +
                                               std::to_string(node.state.id));
    std::uint64_t leaving = 0;
    for (const auto& [symbol, edge] : node.state.out) {
      if (!contains(edge.target)) {
        problems.push_back("edge " + std::to_string(i) + " --" + std::to_string(symbol) +
                           "--> dead state " + std::to_string(edge.target));
        continue;
      }
      if (edge.count == 0) problems.push_back("zero-count edge from " + std::to_string(i));
      incoming[edge.target] += edge.count;
      leaving += edge.count;
    }
    if (leaving > node.state.visits)
      problems.push_back("state " + std::to_string(i) + " emits more than it receives");
  }

  std::vector<bool> reached(nodes_.size(), false);
  std::deque<StateId> queue{0};
  reached[0] = true;
  while (!queue.empty()) {
    const StateId id = queue.front();
    queue.pop_front();
    for (const auto& [symbol, edge] : nodes_[id].state.out) {
      if (edge.target < reached.size() && !reached[edge.target]) {
        reached[edge.target] = true;
        queue.push_back(edge.target);
      }
    }
  }

  std::uint64_t non_root_visits = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!nodes_[i].alive) continue;
    if (!reached[i]) problems.push_back("state " + std::to_string(i) + " unreachable");
    if (i == 0) continue;
    non_root_visits += nodes_[i].state.visits;
    if (incoming[i] != nodes_[i].state.visits)
      problems.push_back("state " + std::to_string(i) + " visits " +
                         std::to_string(nodes_[i].state.visits) + " but receives " +
                         std::to_string(incoming[i]));
  }
  if (nodes_[0].state.visits != total_traces_) problems.push_back("root visits != total traces");
  if (incoming[0] != 0) problems.push_back("root has incoming transitions");
  if (non_root_visits != total_symbols_) problems.push_back("non-root visits != total symbols");
  return problems;
}

std::string Automaton::to_dot() const {
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (const auto& node : nodes_) {
    if (!node.alive) continue;
    out << "  " << node.state.id << " [label=\"" << node.state.id << '#' << node.state.visits
        << "\"];\n";
  }
  for (const auto& node : nodes_) {
    if (!node.alive) continue;
    for (const auto& [symbol, edge] : node.state.out) {
      out << "  " << node.state.id << " -> " << edge.target << " [label=\"" << symbol << '#'
          << edge.count << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string Automaton::dump() const {
  std::ostringstream out;
  out << "# mish automaton v1\n";
  for (const auto& node : nodes_) {
    if (node.alive) out << "STATE " << node.state.id << ' ' << node.state.visits << '\n';
  }
  for (const auto& node : nodes_) {
    if (!node.alive) continue;
    for (const auto& [symbol, edge] : node.state.out) {
      out << "EDGE " << node.state.id << ' ' << symbol << ' ' << edge.target << ' ' << edge.count
          << '\n';
    }
  }
  return out.str();
}

Automaton Automaton::load(std::string_view text, MergeConfig config) {
  Automaton model(config);
  model.nodes_.clear();
  model.live_states_ = 0;

  struct Edge {
    StateId src;
    TemplateId symbol;
    StateId dst;
    std::uint64_t count;
  };
  std::vector<Edge> edges;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string kind;
    fields >> kind;
    if (kind == "STATE") {
      std::uint64_t id = 0;
      std::uint64_t visits = 0;
      if (!(fields >> id >> visits)) throw InvalidConfig("bad STATE at line " + std::to_string(line_no));
      if (id >= model.nodes_.size()) model.nodes_.resize(id + 1);
      Node& node = model.nodes_[id];
      if (node.alive) throw InvalidConfig("duplicate state " + std::to_string(id));
      node = Node{State{static_cast<StateId>(id), visits, {}}, true, true, 0, 0};
      ++model.live_states_;
    } else if (kind == "EDGE") {
      Edge e{};
      if (!(fields >> e.src >> e.symbol >> e.dst >> e.count))
        throw InvalidConfig("bad EDGE at line " + std::to_string(line_no));
      edges.push_back(e);
    } else {
      throw InvalidConfig("unknown record '" + kind + "' at line " + std::to_string(line_no));
    }
  }
  for (std::size_t i = 0; i < model.nodes_.size(); ++i) model.nodes_[i].state.id = static_cast<StateId>(i);
  if (model.nodes_.empty() || !model.nodes_[0].alive) throw InvalidConfig("model has no root state");
  for (const auto& e : edges) {
    if (!model.contains(e.src)) throw InvalidConfig("edge from unknown state " + std::to_string(e.src));
    auto [it, inserted] = model.nodes_[e.src].state.out.emplace(e.symbol, Transition{e.dst, e.count});
    if (!inserted) throw InvalidConfig("non-deterministic edge from state " + std::to_string(e.src));
    model.alphabet_.insert(e.symbol);
  }
  model.total_traces_ = model.nodes_[0].state.visits;
  for (std::size_t i = 1; i < model.nodes_.size(); ++i) {
    if (model.nodes_[i].alive) model.total_symbols_ += model.nodes_[i].state.visits;
  }
  if (auto problems = model.validate(); !problems.empty())
    throw InvalidConfig("inconsistent model: " + problems.front());
  return model;
}

}  // namespace mish
