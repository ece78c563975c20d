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

// Rank functions of laminar leaf-block families, exhaustive polymatroid
// axiom checks, governance truncation and separable welfare maximization.

#ifndef SVCMARKET_POLYMATROID_H_
#define SVCMARKET_POLYMATROID_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "svcmarket/graph.h"

namespace svcmarket {

// Subsets of the ground set are bitmasks over ground-set positions.
using LeafMask = uint64_t;

class RankFunction {
 public:
  // `capacities` must give a positive capacity for every family entry.
  // Every ground leaf must be covered by at least one entry.
  RankFunction(LeafBlockFamily family, std::map<int, int64_t> capacities);

  // Rank function of `dag` with node capacities taken from the DAG.
  static RankFunction FromDag(const ServiceDag& dag);

  // Convenience for tests and auctions: ground leaves 0..n-1 and blocks
  // given as (leaf list, capacity); block keys are assigned 0..m-1.
  static RankFunction FromBlocks(
      int ground_size,
      const std::vector<std::pair<std::vector<int>, int64_t>>& blocks);

  const LeafBlockFamily& family() const { return family_; }
  const std::map<int, int64_t>& capacities() const { return capacities_; }
  const std::optional<std::map<int, int64_t>>& leaf_bounds() const {
    return bounds_;
  }
  const std::vector<int>& ground() const { return family_.ground; }
  int ground_size() const { return static_cast<int>(family_.ground.size()); }
  bool laminar() const { return laminar_; }

  // Position of leaf id in the ground set; throws on unknown leaf.
  int Position(int leaf) const;
  LeafMask MaskOf(const std::vector<int>& leaves) const;

  int64_t Rank(const std::vector<int>& leaves) const;
  int64_t RankMask(LeafMask mask) const;

  // Returns a copy with the given leaf bounds installed (merged with any
  // existing bounds by taking the minimum).
  RankFunction Truncate(const std::map<int, int64_t>& bounds) const;

  // True when `alloc` (per ground position) satisfies every block capacity
  // and leaf bound.
  bool Feasible(const std::vector<int64_t>& alloc) const;

 private:
  struct Block {
    LeafMask mask = 0;
    int64_t cap = 0;
    int parent = -1;
    std::vector<int> children;
  };

  void BuildForest();
  int64_t EvalBlock(int b, LeafMask s) const;
  int64_t CoverMin(LeafMask s) const;

  LeafBlockFamily family_;
  std::map<int, int64_t> capacities_;
  std::optional<std::map<int, int64_t>> bounds_;
  std::map<int, int> position_;
  bool laminar_ = true;
  std::vector<Block> blocks_;  // distinct sets incl. bound singletons
  std::vector<int> roots_;
};

struct AxiomReport {
  bool ok = true;
  std::string violation;  // empty when ok
  LeafMask s = 0;
  LeafMask t = 0;
  int element = -1;
};

// Exhaustive check of normalization, monotonicity over all nested pairs and
// submodularity over all (S subset of T, e not in T). Throws
// std::invalid_argument when n > 12.
AxiomReport VerifyPolymatroid(int n, const std::function<int64_t(LeafMask)>& f);
AxiomReport VerifyPolymatroid(const RankFunction& f);

// Truncated rank evaluated literally as min over T subset of S of
// f(T) + sum of bounds over S \ T. Reference oracle for small instances.
int64_t TruncatedRankByDefinition(const RankFunction& base,
                                  const std::map<int, int64_t>& bounds,
                                  LeafMask s);

struct WelfareResult {
  std::vector<int64_t> allocation;  // per ground position
  int64_t total = 0;
};

// `values[i]` lists the non-increasing, non-negative marginal values of the
// ground leaf at position i.
WelfareResult GreedyWelfareMax(const RankFunction& f,
                               const std::vector<std::vector<int64_t>>& values);

// Enumerates every integer vector with x_l <= f({l}); throws
// std::invalid_argument when the space exceeds 10^6 points.
WelfareResult BruteForceWelfareMax(
    const RankFunction& f, const std::vector<std::vector<int64_t>>& values);

}  // namespace svcmarket

#endif  // SVCMARKET_POLYMATROID_H_
