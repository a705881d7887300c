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

#include "mish/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mish::stats {

double wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 3 || b.size() < 3) throw std::invalid_argument("rank-sum test needs at least 3 values per sample");
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t n = n1 + n2;

  std::vector<std::pair<double, bool>> pooled;  // value, belongs to a
  pooled.reserve(n);
  for (double v : a) pooled.emplace_back(v, true);
  for (double v : b) pooled.emplace_back(v, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second) rank_sum_a += midrank;
    }
    i = j;
  }
  if (tie_term == static_cast<double>(n) * n * n - static_cast<double>(n)) return 1.0;

  const double fn1 = static_cast<double>(n1);
  const double fn2 = static_cast<double>(n2);
  const double fn = static_cast<double>(n);
  const double u1 = rank_sum_a - fn1 * (fn1 + 1.0) / 2.0;
  const double u = std::max(u1, fn1 * fn2 - u1);
  const double mean = fn1 * fn2 / 2.0;
  const double sd = std::sqrt(fn1 * fn2 / 12.0 * ((fn + 1.0) - tie_term / (fn * (fn - 1.0))));
  const double z = (u - mean - 0.5) / sd;
  const double p = std::erfc(z / std::sqrt(2.0));  // 2 * upper tail
  return std::clamp(p, 0.0, 1.0);
}

Magnitude classify_a12(double a12) {
  const double d = std::abs(a12 - 0.5);
  if (d < 0.06) return Magnitude::Negligible;
  if (d < 0.14) return Magnitude::Small;
  if (d < 0.21) return Magnitude::Medium;
  return Magnitude::Large;
}

EffectSize vargha_delaney_a12(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("A12 needs non-empty samples");
  std::size_t wins = 0;
  std::size_t ties = 0;
  for (double x : a) {
    for (double y : b) {
      if (x > y) {
        ++wins;
      } else if (x == y) {
        ++ties;
      }
    }
  }
  const double value = (static_cast<double>(wins) + 0.5 * static_cast<double>(ties)) /
                       (static_cast<double>(a.size()) * static_cast<double>(b.size()));
  return {value, classify_a12(value)};
}

std::string_view to_string(Magnitude magnitude) {
  switch (magnitude) {
    case Magnitude::Negligible:
      return "negligible";
    case Magnitude::Small:
      return "small";
    case Magnitude::Medium:
      return "medium";
    case Magnitude::Large:
      return "large";
  }
  return "negligible";
}

double quantile(std::span<const double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - static_cast<double>(lo));
}

double median(std::span<const double> values) { return quantile(values, 0.5); }

double iqr(std::span<const double> values) { return quantile(values, 0.75) - quantile(values, 0.25); }

}  // namespace mish::stats
