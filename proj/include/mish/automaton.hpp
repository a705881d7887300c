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

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mish/log_templates.hpp"
#include "mish/trace.hpp"

namespace mish {

using StateId = std::uint32_t;
using Path = std::vector<StateId>;

struct MergeConfig {
  /// Significance level of the Hoeffding compatibility test.
  double alpha = 0.05;
  /// States seen fewer times than this are not merge candidates and are
  /// treated as compatible when they appear deeper in a comparison.
  std::uint64_t min_count = 10;
  bool enabled = true;
};

struct Transition {
  StateId target = 0;
  std::uint64_t count = 0;
};

struct State {
  StateId id = 0;
  std::uint64_t visits = 0;
  std::map<TemplateId, Transition> out;
};

/// Frequency-annotated deterministic automaton learned from trace batches.
///
/// Every state is accepting. The root's visit count is the number of traces
/// seen; every other state's visit count is the sum of its incoming
/// transition counts.
///
/// Learning is batch-incremental. Each batch first extends the model as a
/// prefix tree, then the non-core frontier is processed breadth-first: a
/// frontier state with enough evidence is merged into the lowest-id
/// compatible core state (never the root) or promoted to core. Frontier
/// states below `min_count` stay unmerged until later batches add evidence.
class Automaton {
 public:
  explicit Automaton(MergeConfig config = {});

  void ingest_batch(std::span<const Trace> traces);
  void ingest_batch(std::span<const std::vector<TemplateId>> traces);

  /// States visited after leaving the root. Throws UnknownTransition.
  Path replay(std::span<const TemplateId> symbols) const;

  /// Visit counts along `path`, multiplicity preserved.
  std::vector<std::uint64_t> visit_counts(const Path& path) const;

  StateId root() const noexcept { return 0; }
  const State& state(StateId id) const;
  bool contains(StateId id) const noexcept;
  std::vector<StateId> state_ids() const;
  std::size_t state_count() const noexcept { return live_states_; }
  std::size_t transition_count() const;

  std::uint64_t total_symbols() const noexcept { return total_symbols_; }
  std::uint64_t total_traces() const noexcept { return total_traces_; }
  const std::set<TemplateId>& alphabet() const noexcept { return alphabet_; }
  const MergeConfig& config() const noexcept { return config_; }
  std::size_t merges() const noexcept { return merges_; }

  /// Describes every violated structural invariant; empty when sound.
  std::vector<std::string> validate() const;

  std::string to_dot() const;

  /// `STATE id count` and `EDGE src sym dst count` lines.
  std::string dump() const;
  /// Parses dump(); every loaded state becomes core. Throws InvalidConfig.
  static Automaton load(std::string_view text, MergeConfig config = {});

 private:
  struct Node {
    State state;
    bool alive = false;
    bool core = false;
    StateId parent = 0;  // only meaningful for non-core states
    TemplateId via = 0;
  };

  StateId add_state(StateId parent, TemplateId via);
  void extend(std::span<const TemplateId> symbols);
  void merge_frontier();
  std::vector<StateId> frontier() const;
  bool compatible(StateId core, StateId candidate) const;
  void merge(StateId core, StateId candidate);
  void fold(StateId into, StateId from);
  void renumber(StateId from, StateId to);

  MergeConfig config_;
  std::vector<Node> nodes_;
  std::size_t live_states_ = 0;
  std::uint64_t total_symbols_ = 0;
  std::uint64_t total_traces_ = 0;
  std::set<TemplateId> alphabet_;
  std::size_t merges_ = 0;
};

}  // namespace mish
