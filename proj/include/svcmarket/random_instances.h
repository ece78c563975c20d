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

// Seeded random instance generators shared by the unit tests and the
// acceptance harness.

#ifndef SVCMARKET_RANDOM_INSTANCES_H_
#define SVCMARKET_RANDOM_INSTANCES_H_

#include <cstdint>
#include <map>
#include <random>

#include "svcmarket/auctions.h"
#include "svcmarket/graph.h"
#include "svcmarket/polymatroid.h"

namespace svcmarket {

// Random series-parallel term whose composed DAG has between 1 and
// `max_leaves` leaves. Capacities are drawn from 1..max_cap.
SpTermPtr RandomSpTerm(std::mt19937_64& rng, int max_leaves, int64_t max_cap);

// Random out-tree with 1..max_leaves leaves and capacities 1..max_cap.
ServiceDag RandomTree(std::mt19937_64& rng, int max_leaves, int64_t max_cap);

// Random laminar rank function: a tree or an SP composition.
RankFunction RandomLaminarRank(std::mt19937_64& rng, int max_leaves,
                               int64_t max_cap);

// Random leaf bounds in 0..max_bound for every ground leaf of `f`.
std::map<int, int64_t> RandomBounds(std::mt19937_64& rng, const RankFunction& f,
                                    int64_t max_bound);

// Random slice market with K types, laminar supply over the types and
// general unit-demand bidders.
SliceMarket RandomSliceMarket(std::mt19937_64& rng, int bidders, int types,
                              int64_t v_max);

// Every bidder values exactly one type (or nothing).
SliceMarket RandomSingleTypeMarket(std::mt19937_64& rng, int bidders,
                                   int types, int64_t v_max);

}  // namespace svcmarket

#endif  // SVCMARKET_RANDOM_INSTANCES_H_
