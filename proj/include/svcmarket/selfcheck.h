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

// Monte Carlo checks of the statistics routines against known nulls.

#ifndef SVCMARKET_SELFCHECK_H_
#define SVCMARKET_SELFCHECK_H_

#include <cstdint>

namespace svcmarket {

// Fraction of `trials` standard-normal samples of size n whose 95% BCa
// interval for the mean covers 0.
double BcaCoverage(int trials, int n, int resamples, uint64_t seed);

// Rejection rate at alpha 0.05 of Kruskal-Wallis on three groups of
// `group_size` draws from one distribution.
double KruskalWallisNullRate(int trials, int group_size, uint64_t seed);

}  // namespace svcmarket

#endif  // SVCMARKET_SELFCHECK_H_
