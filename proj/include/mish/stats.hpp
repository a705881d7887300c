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

#include <span>
#include <string>
#include <string_view>

namespace mish::stats {

/// Two-sided p-value of the unpaired Wilcoxon rank-sum (Mann-Whitney U)
/// test using the tie-corrected normal approximation with continuity
/// correction. Returns 1.0 when every value in both samples is identical.
/// Throws std::invalid_argument if either sample has fewer than 3 values.
double wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

enum class Magnitude { Negligible, Small, Medium, Large };

struct EffectSize {
  double a12 = 0.5;
  Magnitude magnitude = Magnitude::Negligible;
};

/// Vargha-Delaney A12: P(a > b) + 0.5 P(a = b) over all cross pairs.
/// Throws std::invalid_argument on an empty sample.
EffectSize vargha_delaney_a12(std::span<const double> a, std::span<const double> b);

/// Conventional labels on |A12 - 0.5|: 0.06, 0.14 and 0.21 cut-offs.
Magnitude classify_a12(double a12);
std::string_view to_string(Magnitude magnitude);

double median(std::span<const double> values);
/// Interquartile range with linear interpolation between order statistics.
double iqr(std::span<const double> values);
double quantile(std::span<const double> values, double q);

}  // namespace mish::stats
