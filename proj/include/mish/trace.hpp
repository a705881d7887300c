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
#include <span>
#include <string>
#include <vector>

#include "mish/log_templates.hpp"

namespace mish {

/// Ticks since run start. The simulator advances one tick per emitted event.
using Timestamp = std::uint64_t;

struct LogEvent {
  Timestamp timestamp = 0;
  std::string service;
  std::string message;
};

/// Closed interval [start, end] during which one test case executed.
struct ExecutionWindow {
  std::string test_id;
  Timestamp start = 0;
  Timestamp end = 0;
};

struct Trace {
  std::string test_id;
  std::vector<TemplateId> symbols;
};

struct TraceStats {
  std::size_t events_in_windows = 0;
  std::size_t dropped_events = 0;  // outside every window
  std::size_t empty_windows = 0;
};

/// Groups `events` into `windows` and maps each event to its template symbol.
///
/// Returns one trace per window in window order. Events are classified into
/// `tree` in input order; events outside every window are dropped without
/// touching the tree. An empty window yields the single "None" symbol.
/// Throws OverlappingWindows if two windows intersect.
std::vector<Trace> build_traces(std::span<const LogEvent> events,
                                std::span<const ExecutionWindow> windows,
                                TemplateTree& tree,
                                TraceStats* stats = nullptr);

}  // namespace mish
