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

#include <cstdint>
#include <span>
#include <string_view>

namespace mish {

enum class FitnessKind { LowerThanMedian, WeightedSum };

std::string_view to_string(FitnessKind kind);
/// Accepts "lm" / "ws" (case-insensitive). Throws InvalidConfig.
FitnessKind parse_fitness_kind(std::string_view text);

struct Fitness {
  double value = 0.0;
  FitnessKind kind = FitnessKind::LowerThanMedian;
};

// Both functions take the visit counts along a replay path, root excluded,
// one entry per visit. Throw std::invalid_argument on an empty path or a
// zero count.

/// Fraction of entries strictly below the path's median; 1/count for a
/// single-state path.
Fitness fitness_lm(std::span<const std::uint64_t> visit_counts);

/// Inverse of the rank-weighted sum of the ascending-sorted counts.
Fitness fitness_ws(std::span<const std::uint64_t> visit_counts);

Fitness compute_fitness(FitnessKind kind, std::span<const std::uint64_t> visit_counts);

}  // namespace mish
