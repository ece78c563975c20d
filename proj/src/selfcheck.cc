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

#include "svcmarket/selfcheck.h"

#include <random>
#include <vector>

#include "svcmarket/stats.h"

namespace svcmarket {

double BcaCoverage(int trials, int n, int resamples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  int covered = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> x(n);
    for (double& v : x) v = normal(rng);
    Interval ci = BcaCi(x, Mean, resamples, 0.05, rng);
    if (ci.lo <= 0.0 && 0.0 <= ci.hi) ++covered;
  }
  return static_cast<double>(covered) / trials;
}

double KruskalWallisNullRate(int trials, int group_size, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  int rejected = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::vector<double>> groups(3, std::vector<double>(group_size));
    for (auto& g : groups) {
      for (double& v : g) v = normal(rng);
    }
    if (KruskalWallis(groups).p_value < 0.05) ++rejected;
  }
  return static_cast<double>(rejected) / trials;
}

}  // namespace svcmarket
