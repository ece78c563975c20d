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

// Randomized and exhaustive checks of the structural results: laminar
// reachability, polymatroid rank, truncation closure, greedy optimality,
// auction incentive properties and encapsulation of entangled cores.
#ifndef SVCMARKET_THEORY_SUITE_H_
#define SVCMARKET_THEORY_SUITE_H_

#include <cstdint>
#include <string>
#include <vector>

namespace svcmarket {

struct CheckResult {
  int criterion = 0;  // acceptance item the check belongs to
  std::string name;
  bool passed = true;
  int instances = 0;
  std::string detail;  // first failing instance, or a summary
};

struct TheorySuiteOptions {
  uint64_t seed = 2026;
  int trees = 200;
  int sp_terms = 200;
  int truncations = 100;
  int welfare_instances = 200;
  int dsic_instances = 100;
  // Adds a deliberately non-laminar family to the laminarity check.
  bool inject_non_laminar = false;
};

std::vector<CheckResult> RunTheorySuite(const TheorySuiteOptions& options = {});

}  // namespace svcmarket

#endif  // SVCMARKET_THEORY_SUITE_H_
