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
#include <random>
#include <span>

#include "mish/fitness.hpp"
#include "mish/rest.hpp"
#include "mish/trace.hpp"

namespace mish {

using Rng = std::mt19937_64;

inline constexpr std::size_t kDefaultMaxTestLength = 10;

struct Individual {
  TestCase test;
  Trace trace;
  Fitness fitness;
  std::uint64_t birth_generation = 0;
};

/// Strict "fitter than": higher fitness, then fewer calls, then older.
bool fitter(const Individual& a, const Individual& b);

/// Random test case: geometric length (p = 0.5) truncated to [1, max_len],
/// uniform endpoints, methods and parameter values. Throws EmptyScenario.
TestCase sample_random(const ApiSurface& surface, Rng& rng,
                       std::size_t max_len = kDefaultMaxTestLength);

/// Fittest of `k` uniform draws with replacement; earlier draws win ties.
const Individual& tournament_select(std::span<const Individual> population, std::size_t k, Rng& rng);

enum class MutationKind { PerturbParam, InsertCall, DeleteCall, SwapCalls, ToggleSession };

/// Mutation operators applicable to `test` given the length bound.
std::vector<MutationKind> applicable_mutations(const TestCase& test, std::size_t max_len);

/// Returns a copy of `test` with exactly one uniformly chosen applicable
/// operator applied.
TestCase mutate(const TestCase& test, const ApiSurface& surface, Rng& rng,
                std::size_t max_len = kDefaultMaxTestLength, MutationKind* applied = nullptr);

/// Top `size` of parents followed by offspring under `fitter`; ties keep
/// the earlier entry.
std::vector<Individual> select_survivors(std::vector<Individual> parents,
                                         std::vector<Individual> offspring, std::size_t size);

}  // namespace mish
