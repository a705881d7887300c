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

#include <algorithm>
#include <numeric>

#include "mish/error.hpp"
#include "mish/trace.hpp"

namespace mish {

std::vector<Trace> build_traces(std::span<const LogEvent> events,
                                std::span<const ExecutionWindow> windows,
                                TemplateTree& tree,
                                TraceStats* stats) {
  std::vector<std::size_t> by_start(windows.size());
  std::iota(by_start.begin(), by_start.end(), std::size_t{0});
  std::stable_sort(by_start.begin(), by_start.end(), [&](std::size_t a, std::size_t b) {
    return windows[a].start < windows[b].start;
  });
  for (std::size_t i = 0; i < by_start.size(); ++i) {
    const auto& w = windows[by_start[i]];
    if (w.start > w.end) throw OverlappingWindows("window " + w.test_id + " ends before it starts");
    if (i > 0 && windows[by_start[i - 1]].end >= w.start) {
      throw OverlappingWindows("windows " + windows[by_start[i - 1]].test_id + " and " + w.test_id +
                               " overlap");
    }
  }

  std::vector<Trace> traces(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) traces[i].test_id = windows[i].test_id;

  std::vector<std::size_t> order(events.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return events[a].timestamp < events[b].timestamp;
  });

  TraceStats local;
  for (std::size_t index : order) {
    const LogEvent& event = events[index];
    // last window starting at or before the event
    auto it = std::upper_bound(by_start.begin(), by_start.end(), event.timestamp,
                               [&](Timestamp t, std::size_t w) { return t < windows[w].start; });
    if (it == by_start.begin() || windows[*(it - 1)].end < event.timestamp) {
      ++local.dropped_events;
      continue;
    }
    traces[*(it - 1)].symbols.push_back(tree.ingest(event.message));
    ++local.events_in_windows;
  }

  for (auto& trace : traces) {
    if (trace.symbols.empty()) {
      trace.symbols.push_back(tree.ingest(kNoneWord));
      ++local.empty_windows;
    }
  }
  if (stats != nullptr) *stats = local;
  return traces;
}

}  // namespace mish
