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

#include "mish/fitness.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "mish/error.hpp"

namespace mish {

namespace {

std::vector<std::uint64_t> checked_sorted(std::span<const std::uint64_t> counts) {
  if (counts.empty()) throw std::invalid_argument("fitness of an empty path");
  std::vector<std::uint64_t> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == 0) throw std::invalid_argument("path visits a state with zero visits");
  return sorted;
}

}  // namespace

std::string_view to_string(FitnessKind kind) {
  return kind == FitnessKind::LowerThanMedian ? "lm" : "ws";
}

FitnessKind parse_fitness_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "lm") return FitnessKind::LowerThanMedian;
  if (lower == "ws") return FitnessKind::WeightedSum;
  throw InvalidConfig("unknown fitness function '" + std::string(text) + "' (expected lm or ws)");
}

Fitness fitness_lm(std::span<const std::uint64_t> visit_counts) {
  const auto sorted = checked_sorted(visit_counts);
  const std::size_t n = sorted.size();
  if (n == 1) return {1.0 / static_cast<double>(sorted[0]), FitnessKind::LowerThanMedian};

  const double median = n % 2 == 1
                            ? static_cast<double>(sorted[n / 2])
                            : (static_cast<double>(sorted[n / 2 - 1]) + static_cast<double>(sorted[n / 2])) / 2.0;
  const auto below = std::count_if(sorted.begin(), sorted.end(),
                                   [median](std::uint64_t c) { return static_cast<double>(c) < median; });
  return {static_cast<double>(below) / static_cast<double>(n), FitnessKind::LowerThanMedian};
}

Fitness fitness_ws(std::span<const std::uint64_t> visit_counts) {
  const auto sorted = checked_sorted(visit_counts);
  // exact in double for any realistic count range
  double weighted = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    weighted += static_cast<double>(i + 1) * static_cast<double>(sorted[i]);
  }
  return {1.0 / weighted, FitnessKind::WeightedSum};
}

Fitness compute_fitness(FitnessKind kind, std::span<const std::uint64_t> visit_counts) {
  return kind == FitnessKind::LowerThanMedian ? fitness_lm(visit_counts) : fitness_ws(visit_counts);
}

}  // namespace mish
