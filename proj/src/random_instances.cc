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

#include "svcmarket/random_instances.h"

#include <algorithm>
#include <utility>
#include <vector>

namespace svcmarket {
namespace {

int64_t Draw(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
}

// Builds a term with exactly `leaves` leaves.
SpTermPtr TermWithLeaves(std::mt19937_64& rng, int leaves, int64_t max_cap,
                         int depth) {
  if (leaves == 1 && (depth > 3 || Draw(rng, 0, 2) == 0)) {
    return SpTerm::Edge(Draw(rng, 1, max_cap));
  }
  // series keeps leaves(l) - 1 + leaves(r); parallel sums them.
  if (leaves == 1 || Draw(rng, 0, 1) == 0) {
    int left = static_cast<int>(Draw(rng, 1, leaves));
    int right = leaves - left + 1;
    return SpTerm::Series(TermWithLeaves(rng, left, max_cap, depth + 1),
                          TermWithLeaves(rng, right, max_cap, depth + 1));
  }
  int left = static_cast<int>(Draw(rng, 1, leaves - 1));
  return SpTerm::Parallel(TermWithLeaves(rng, left, max_cap, depth + 1),
                          TermWithLeaves(rng, leaves - left, max_cap, depth + 1));
}

RankFunction RandomSupply(std::mt19937_64& rng, int types) {
  std::vector<std::pair<std::vector<int>, int64_t>> blocks;
  for (int t = 0; t < types; ++t) blocks.push_back({{t}, Draw(rng, 0, 2) + 1});
  if (types > 1) {
    std::vector<int> all(types);
    for (int t = 0; t < types; ++t) all[t] = t;
    blocks.push_back({all, Draw(rng, 1, 3)});
    if (types > 2 && Draw(rng, 0, 1) == 0) {
      blocks.push_back({{0, 1}, Draw(rng, 1, 2)});
    }
  }
  return RankFunction::FromBlocks(types, blocks);
}

}  // namespace

SpTermPtr RandomSpTerm(std::mt19937_64& rng, int max_leaves, int64_t max_cap) {
  int leaves = static_cast<int>(Draw(rng, 1, max_leaves));
  return TermWithLeaves(rng, leaves, max_cap, 0);
}

ServiceDag RandomTree(std::mt19937_64& rng, int max_leaves, int64_t max_cap) {
  // Random recursive tree; redraw until the leaf count fits.
  while (true) {
    const int n = static_cast<int>(Draw(rng, 2, 2 * max_leaves + 1));
    std::vector<DagNode> nodes;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> children(n, 0);
    for (int i = 0; i < n; ++i) {
      nodes.push_back({i, Draw(rng, 1, max_cap), Tier::kNone});
      if (i > 0) {
        int parent = static_cast<int>(Draw(rng, 0, i - 1));
        edges.push_back({parent, i});
        ++children[parent];
      }
    }
    int leaves = static_cast<int>(std::count(children.begin(), children.end(), 0));
    if (leaves <= max_leaves) {
      return ServiceDag(TopologyKind::kTree, nodes, edges);
    }
  }
}

RankFunction RandomLaminarRank(std::mt19937_64& rng, int max_leaves,
                               int64_t max_cap) {
  if (Draw(rng, 0, 1) == 0) {
    return RankFunction::FromDag(RandomTree(rng, max_leaves, max_cap));
  }
  return RankFunction::FromDag(
      SpCompose(RandomSpTerm(rng, max_leaves, max_cap)).first);
}

std::map<int, int64_t> RandomBounds(std::mt19937_64& rng, const RankFunction& f,
                                    int64_t max_bound) {
  std::map<int, int64_t> bounds;
  for (int leaf : f.ground()) {
    if (Draw(rng, 0, 3) != 0) bounds[leaf] = Draw(rng, 0, max_bound);
  }
  return bounds;
}

SliceMarket RandomSliceMarket(std::mt19937_64& rng, int bidders, int types,
                              int64_t v_max) {
  SliceMarket m{std::vector<SliceType>(types), RandomSupply(rng, types), {},
                v_max};
  for (int t = 0; t < types; ++t) {
    m.types[t] = {5.0 + 10.0 * t, 1.0};
  }
  for (int i = 0; i < bidders; ++i) {
    UnitValuation v(types);
    for (auto& x : v) x = Draw(rng, 0, v_max);
    m.bidders.push_back(v);
  }
  return m;
}

SliceMarket RandomSingleTypeMarket(std::mt19937_64& rng, int bidders,
                                   int types, int64_t v_max) {
  SliceMarket m = RandomSliceMarket(rng, bidders, types, v_max);
  for (auto& v : m.bidders) {
    int t = static_cast<int>(Draw(rng, 0, types - 1));
    int64_t value = Draw(rng, 1, v_max);
    std::fill(v.begin(), v.end(), 0);
    v[t] = value;
  }
  return m;
}

}  // namespace svcmarket
