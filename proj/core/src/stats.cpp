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

#include "dtrprof/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "dtrprof/error.hpp"

namespace dtrprof {

double accuracy(std::span<const std::string> predicted, std::span<const std::string> truth) {
  if (predicted.size() != truth.size()) throw InvalidArgument("prediction and truth lengths differ");
  if (truth.empty()) throw InvalidArgument("accuracy of an empty prediction set is undefined");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::string_view to_string(WilcoxonMethod method) {
  switch (method) {
    case WilcoxonMethod::kExact: return "exact";
    case WilcoxonMethod::kNormal: return "normal";
    case WilcoxonMethod::kInsufficientN: return "insufficient-n";
  }
  return "?";
}

namespace {

constexpr double kRelativeTolerance = 1e-12;

bool close(double x, double y) {
  return std::abs(x - y) <= kRelativeTolerance * std::max({std::abs(x), std::abs(y), 1.0});
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() != b.size()) throw InvalidArgument("wilcoxon: samples have different lengths");

  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) throw InvalidArgument("wilcoxon: non-finite input");
    if (close(a[i], b[i])) continue;
    diffs.push_back(a[i] - b[i]);
  }
  WilcoxonResult result;
  result.n = diffs.size();
  if (diffs.size() < 5) {
    result.method = WilcoxonMethod::kInsufficientN;
    result.p_value = std::numeric_limits<double>::quiet_NaN();
    result.significant = false;
    return result;
  }

  const std::size_t n = diffs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return std::abs(diffs[i]) < std::abs(diffs[j]); });

  // Doubled ranks keep tied averages integral.
  std::vector<std::int64_t> rank2(n);
  double tie_term = 0.0;
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && close(std::abs(diffs[order[end]]), std::abs(diffs[order[end - 1]]))) ++end;
    const auto doubled = static_cast<std::int64_t>(start + 1 + end);  // 2 * mean of ranks start+1..end
    for (std::size_t k = start; k < end; ++k) rank2[order[k]] = doubled;
    const double t = static_cast<double>(end - start);
    tie_term += t * t * t - t;
    start = end;
  }

  std::int64_t plus2 = 0;
  std::int64_t total2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total2 += rank2[i];
    if (diffs[i] > 0) plus2 += rank2[i];
  }
  const std::int64_t stat2 = std::min(plus2, total2 - plus2);
  result.statistic = static_cast<double>(stat2) / 2.0;

  if (n <= kWilcoxonExactLimit) {
    // Distribution of the doubled W+ over all 2^n sign assignments.
    std::vector<std::uint64_t> ways(static_cast<std::size_t>(total2) + 1, 0);
    ways[0] = 1;
    std::int64_t reach = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::int64_t s = reach; s >= 0; --s) {
        if (ways[static_cast<std::size_t>(s)]) ways[static_cast<std::size_t>(s + rank2[i])] += ways[static_cast<std::size_t>(s)];
      }
      reach += rank2[i];
    }
    // Assignments whose min(W+, W-) is at most the observed statistic.
    std::uint64_t extreme = 0;
    for (std::int64_t s = 0; s <= total2; ++s) {
      if (std::min(s, total2 - s) <= stat2) extreme += ways[static_cast<std::size_t>(s)];
    }
    result.method = WilcoxonMethod::kExact;
    result.p_value = static_cast<double>(extreme) / std::ldexp(1.0, static_cast<int>(n));
  } else {
    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    const double z = (mean - result.statistic - 0.5) / std::sqrt(var);
    result.method = WilcoxonMethod::kNormal;
    result.p_value = z <= 0.0 ? 1.0 : std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  }
  result.significant = result.p_value <= alpha;
  return result;
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("pearson: inputs have different lengths");
  if (xs.size() < 2) throw InvalidArgument("pearson: need at least two points");
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  if (constant(xs) || constant(ys)) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace dtrprof
