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

#include "mish/operators.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "mish/error.hpp"

namespace mish {

namespace {

const std::array<std::string, 6> kStringPool = {"", "a", "test", "null", "0", "%00"};

std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string random_string(Rng& rng) {
  static constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
  const std::size_t length = 1 + uniform_index(rng, 8);
  std::string s;
  for (std::size_t i = 0; i < length; ++i) s += kAlphabet[uniform_index(rng, kAlphabet.size())];
  return s;
}

ParamValue sample_value(const ParamSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case ParamSpec::Kind::Int:
      return std::uniform_int_distribution<std::int64_t>(spec.min, spec.max)(rng);
    case ParamSpec::Kind::Enum:
      return spec.values[uniform_index(rng, spec.values.size())];
    case ParamSpec::Kind::String: {
      if (coin(rng, 0.5)) return random_string(rng);
      const std::size_t pool = spec.values.size() + kStringPool.size();
      const std::size_t pick = uniform_index(rng, pool);
      return pick < spec.values.size() ? spec.values[pick] : kStringPool[pick - spec.values.size()];
    }
  }
  return std::int64_t{0};
}

bool login_before(const ApiSurface& surface, const TestCase& test, std::size_t position) {
  for (std::size_t i = 0; i < position && i < test.calls.size(); ++i) {
    const EndpointSpec* e = surface.find(test.calls[i].endpoint);
    if (e != nullptr && e->login) return true;
  }
  return false;
}

RestCall sample_call(const ApiSurface& surface, Rng& rng, bool session_available) {
  const EndpointSpec& endpoint = surface.endpoints[uniform_index(rng, surface.endpoints.size())];
  RestCall call;
  call.endpoint = endpoint.path;
  call.method = endpoint.methods[uniform_index(rng, endpoint.methods.size())];
  for (const auto& [name, spec] : endpoint.params) call.params.emplace(name, sample_value(spec, rng));
  call.uses_session = session_available && coin(rng, 0.5);
  return call;
}

}  // namespace

bool fitter(const Individual& a, const Individual& b) {
  if (a.fitness.value != b.fitness.value) return a.fitness.value > b.fitness.value;
  if (a.test.calls.size() != b.test.calls.size()) return a.test.calls.size() < b.test.calls.size();
  return a.birth_generation < b.birth_generation;
}

TestCase sample_random(const ApiSurface& surface, Rng& rng, std::size_t max_len) {
  if (surface.endpoints.empty()) throw EmptyScenario();
  if (max_len == 0) throw InvalidConfig("max test length must be at least 1");
  std::size_t length = 1;
  while (length < max_len && coin(rng, 0.5)) ++length;

  TestCase test;
  bool logged_in = false;
  for (std::size_t i = 0; i < length; ++i) {
    test.calls.push_back(sample_call(surface, rng, logged_in));
    const EndpointSpec* e = surface.find(test.calls.back().endpoint);
    logged_in = logged_in || e->login;
  }
  return test;
}

const Individual& tournament_select(std::span<const Individual> population, std::size_t k, Rng& rng) {
  if (population.empty()) throw std::invalid_argument("tournament over an empty population");
  const Individual* best = &population[uniform_index(rng, population.size())];
  for (std::size_t i = 1; i < k; ++i) {
    const Individual& candidate = population[uniform_index(rng, population.size())];
    if (fitter(candidate, *best)) best = &candidate;
  }
  return *best;
}

std::vector<MutationKind> applicable_mutations(const TestCase& test, std::size_t max_len) {
  std::vector<MutationKind> kinds;
  const bool has_params = std::any_of(test.calls.begin(), test.calls.end(),
                                      [](const RestCall& c) { return !c.params.empty(); });
  if (has_params) kinds.push_back(MutationKind::PerturbParam);
  if (test.calls.size() < max_len) kinds.push_back(MutationKind::InsertCall);
  if (test.calls.size() > 1) {
    kinds.push_back(MutationKind::DeleteCall);
    kinds.push_back(MutationKind::SwapCalls);
  }
  if (!test.calls.empty()) kinds.push_back(MutationKind::ToggleSession);
  return kinds;
}

TestCase mutate(const TestCase& test, const ApiSurface& surface, Rng& rng, std::size_t max_len,
                MutationKind* applied) {
  TestCase out = test;
  const auto kinds = applicable_mutations(test, max_len);
  if (kinds.empty()) return out;
  const MutationKind kind = kinds[uniform_index(rng, kinds.size())];
  if (applied != nullptr) *applied = kind;

  switch (kind) {
    case MutationKind::PerturbParam: {
      std::vector<std::size_t> with_params;
      for (std::size_t i = 0; i < out.calls.size(); ++i) {
        if (!out.calls[i].params.empty()) with_params.push_back(i);
      }
      RestCall& call = out.calls[with_params[uniform_index(rng, with_params.size())]];
      auto it = call.params.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(uniform_index(rng, call.params.size())));
      const EndpointSpec* endpoint = surface.find(call.endpoint);
      const ParamSpec* spec = endpoint != nullptr ? endpoint->param(it->first) : nullptr;
      if (spec == nullptr) break;
      if (spec->kind == ParamSpec::Kind::Int && coin(rng, 0.5)) {
        const auto current = std::get_if<std::int64_t>(&it->second);
        std::int64_t v = current != nullptr ? *current : spec->min;
        v += coin(rng, 0.5) ? 1 : -1;
        it->second = std::clamp(v, spec->min, spec->max);
      } else {
        it->second = sample_value(*spec, rng);
      }
      break;
    }
    case MutationKind::InsertCall: {
      const std::size_t position = uniform_index(rng, out.calls.size() + 1);
      RestCall call = sample_call(surface, rng, login_before(surface, out, position));
      out.calls.insert(out.calls.begin() + static_cast<std::ptrdiff_t>(position), std::move(call));
      break;
    }
    case MutationKind::DeleteCall:
      out.calls.erase(out.calls.begin() + static_cast<std::ptrdiff_t>(uniform_index(rng, out.calls.size())));
      break;
    case MutationKind::SwapCalls: {
      const std::size_t i = uniform_index(rng, out.calls.size() - 1);
      std::swap(out.calls[i], out.calls[i + 1]);
      break;
    }
    case MutationKind::ToggleSession: {
      RestCall& call = out.calls[uniform_index(rng, out.calls.size())];
      call.uses_session = !call.uses_session;
      break;
    }
  }
  return out;
}

std::vector<Individual> select_survivors(std::vector<Individual> parents,
                                         std::vector<Individual> offspring, std::size_t size) {
  std::vector<Individual> pool = std::move(parents);
  pool.insert(pool.end(), std::make_move_iterator(offspring.begin()),
              std::make_move_iterator(offspring.end()));
  std::stable_sort(pool.begin(), pool.end(), fitter);
  if (pool.size() > size) pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(size), pool.end());
  return pool;
}

}  // namespace mish
