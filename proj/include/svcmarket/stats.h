// Copyright 2026 The Authors.
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

// Nonparametric statistics: BCa bootstrap, Kruskal-Wallis, Wilcoxon
// rank-sum, Holm adjustment, Cliff's delta, Spearman and the 2x2 synergy
// measure.

#ifndef SVCMARKET_STATS_H_
#define SVCMARKET_STATS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace svcmarket {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::optional<double> effect;
  std::optional<std::string> magnitude;
};

using Statistic = std::function<double(const std::vector<double>&)>;

double Mean(const std::vector<double>& x);

// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> AverageRanks(const std::vector<double>& x);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// BCa interval at level 1 - alpha. Falls back to the percentile interval
// when the bias correction or acceleration is undefined. Throws
// std::invalid_argument when the sample has fewer than 2 values.
Interval BcaCi(const std::vector<double>& sample, const Statistic& stat,
               int resamples, double alpha, std::mt19937_64& rng);

TestResult KruskalWallis(const std::vector<std::vector<double>>& groups);

// Mann-Whitney U of `a` versus `b` (statistic = U_a) with tie-corrected
// normal approximation and continuity correction; two-sided p.
TestResult WilcoxonRankSum(const std::vector<double>& a,
                           const std::vector<double>& b);

std::vector<double> HolmAdjust(const std::vector<double>& p_values);

std::string CliffMagnitude(double delta);
// effect = delta, magnitude = label; statistic mirrors delta.
TestResult CliffsDelta(const std::vector<double>& a,
                       const std::vector<double>& b);

TestResult Spearman(const std::vector<double>& x, const std::vector<double>& y);

struct SynergyResult {
  double delta = 0.0;
  Interval ci;
  std::string label;  // additive | super-additive | sub-additive
};

// Cells: naive/none, hybrid/none, naive/strict, hybrid/strict.
SynergyResult Synergy(const std::vector<double>& w_nn,
                      const std::vector<double>& w_hn,
                      const std::vector<double>& w_ns,
                      const std::vector<double>& w_hs, int resamples,
                      std::mt19937_64& rng);

}  // namespace svcmarket

#endif  // SVCMARKET_STATS_H_
