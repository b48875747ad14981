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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dtrprof/error.hpp"
#include "oracles.hpp"

namespace dtrprof {
namespace {

using Strings = std::vector<std::string>;

TEST(AccuracyTest, Examples) {
  EXPECT_EQ(accuracy(Strings{"a", "b"}, Strings{"a", "b"}), 1.0);
  EXPECT_EQ(accuracy(Strings{"a", "b"}, Strings{"b", "a"}), 0.0);
  EXPECT_EQ(accuracy(Strings{"a", "b", "a", "a"}, Strings{"a", "b", "a", "b"}), 0.75);
}

TEST(AccuracyTest, LengthMismatchAndEmpty) {
  EXPECT_THROW(accuracy(Strings{"a"}, Strings{"a", "b"}), InvalidArgument);
  EXPECT_THROW(accuracy(Strings{}, Strings{}), InvalidArgument);
}

TEST(WilcoxonTest, AllPositiveFiveDifferences) {
  const std::vector<double> a{1.1, 2.2, 3.3, 4.4, 5.5};
  const std::vector<double> b{1.0, 2.0, 3.0, 4.0, 5.0};
  const auto r = wilcoxon_signed_rank(a, b);
  EXPECT_EQ(r.method, WilcoxonMethod::kExact);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 0.0625);
  EXPECT_FALSE(r.significant);
  EXPECT_EQ(r.n, 5u);
}

TEST(WilcoxonTest, IdenticalSamplesAreInsufficient) {
  const std::vector<double> a{0.7, 0.8, 0.9, 0.6, 0.5, 0.4};
  const auto r = wilcoxon_signed_rank(a, a);
  EXPECT_EQ(r.method, WilcoxonMethod::kInsufficientN);
  EXPECT_TRUE(std::isnan(r.p_value));
  EXPECT_FALSE(r.significant);
  EXPECT_EQ(to_string(r.method), "insufficient-n");
}

TEST(WilcoxonTest, RoundoffDifferencesCountAsZero) {
  // 0.1 + 0.2 differs from 0.3 only by roundoff.
  const std::vector<double> a{0.1 + 0.2, 1, 2, 3, 4, 5};
  const std::vector<double> b{0.3, 0, 0, 0, 0, 0};
  EXPECT_EQ(wilcoxon_signed_rank(a, b).n, 5u);
}

TEST(WilcoxonTest, MixedSignsMatchBruteForceAtTen) {
  const std::vector<double> d{0.5, -1.0, 1.5, 2.0, -2.5, 3.0, 3.5, -4.0, 4.5, 5.0};
  const std::vector<double> zero(d.size(), 0.0);
  const auto r = wilcoxon_signed_rank(d, zero);
  EXPECT_EQ(r.p_value, oracle::wilcoxon_brute_force(d));
  // W- = 2 + 5 + 8 = 15
  EXPECT_EQ(r.statistic, 15.0);
}

TEST(WilcoxonTest, ExactModeEqualsBruteForceWithTies) {
  std::mt19937_64 gen(1234);
  std::uniform_int_distribution<int> magnitude(-6, 6);
  for (std::size_t n = 5; n <= 12; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> d;
      while (d.size() < n) {
        const int m = magnitude(gen);
        if (m != 0) d.push_back(0.5 * m);
      }
      const std::vector<double> zero(n, 0.0);
      const auto r = wilcoxon_signed_rank(d, zero);
      ASSERT_EQ(r.method, WilcoxonMethod::kExact);
      EXPECT_EQ(r.p_value, oracle::wilcoxon_brute_force(d)) << "n=" << n << " trial " << trial;
    }
  }
}

TEST(WilcoxonTest, NormalApproximationAboveLimit) {
  std::vector<double> d;
  for (int i = 1; i <= 30; ++i) d.push_back(i % 4 == 0 ? -i : i);
  const std::vector<double> zero(d.size(), 0.0);
  const auto r = wilcoxon_signed_rank(d, zero);
  EXPECT_EQ(r.method, WilcoxonMethod::kNormal);
  // W- = 4 + 8 + ... + 28 = 112; mean 232.5; var 30*31*61/24
  const double z = (232.5 - 112.0 - 0.5) / std::sqrt(30.0 * 31.0 * 61.0 / 24.0);
  EXPECT_NEAR(r.p_value, std::erfc(z / std::sqrt(2.0)), 1e-15);
  EXPECT_TRUE(r.significant);
}

TEST(PearsonTest, Examples) {
  const std::vector<double> xs{1, 2, 3};
  EXPECT_NEAR(*pearson(xs, std::vector<double>{3, 5, 7}), 1.0, 1e-15);
  EXPECT_NEAR(*pearson(xs, std::vector<double>{-1, -2, -3}), -1.0, 1e-15);
  EXPECT_NEAR(*pearson(xs, std::vector<double>{1, 3, 2}), 0.5, 1e-15);
}

TEST(PearsonTest, ZeroVarianceIsUndefined) {
  EXPECT_FALSE(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{0.1, 0.1, 0.1}));
  EXPECT_FALSE(pearson(std::vector<double>{4, 4}, std::vector<double>{1, 2}));
}

TEST(PearsonTest, InvariantUnderPositiveAffineMaps) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(8);
    std::vector<double> ys(8);
    for (std::size_t i = 0; i < 8; ++i) {
      xs[i] = g(gen);
      ys[i] = xs[i] + g(gen);
    }
    const double r = *pearson(xs, ys);
    auto xs2 = xs;
    for (double& x : xs2) x = 3.5 * x - 7.0;
    auto ys2 = ys;
    for (double& y : ys2) y = 0.25 * y + 100.0;
    EXPECT_NEAR(*pearson(xs2, ys2), r, 1e-12);
  }
}

}  // namespace
}  // namespace dtrprof
