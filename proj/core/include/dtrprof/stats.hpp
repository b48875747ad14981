// Copyright 2026 The dtrprof Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DTRPROF_STATS_HPP_
#define DTRPROF_STATS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace dtrprof {

// Fraction of exact matches. Throws InvalidArgument on empty or unequal input.
double accuracy(std::span<const std::string> predicted, std::span<const std::string> truth);

enum class WilcoxonMethod { kExact, kNormal, kInsufficientN };

std::string_view to_string(WilcoxonMethod method);

struct WilcoxonResult {
  // min(W+, W-) over the non-zero differences.
  double statistic = 0.0;
  // Two-sided; NaN when method is kInsufficientN.
  double p_value = 0.0;
  bool significant = false;
  std::size_t n = 0;  // non-zero differences
  WilcoxonMethod method = WilcoxonMethod::kExact;
};

// Paired Wilcoxon signed-rank test on a - b. Differences whose magnitude is
// within 1e-12 relative of zero are dropped, and magnitudes within 1e-12
// relative of each other share their average rank, so that accuracies
// computed along different floating-point paths pair up as ties. The exact
// null distribution is used for n <= 20; larger samples use the normal
// approximation with tie and continuity corrections. Fewer than five
// non-zero differences give kInsufficientN and never significant.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b, double alpha = 0.05);

// Largest sample size handled by exact enumeration.
inline constexpr std::size_t kWilcoxonExactLimit = 20;

// Sample Pearson correlation; nullopt when either input has zero variance.
// Throws InvalidArgument for fewer than two points or unequal lengths.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

}  // namespace dtrprof

#endif  // DTRPROF_STATS_HPP_
