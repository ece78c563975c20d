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

// Integrator slice capacities by node-split max-flow and the agent-facing
// quotient graph obtained by contracting integrator clusters.

#ifndef SVCMARKET_ENCAPSULATION_H_
#define SVCMARKET_ENCAPSULATION_H_

#include <cstdint>
#include <map>
#include <vector>

#include "svcmarket/graph.h"
#include "svcmarket/polymatroid.h"

namespace svcmarket {

struct ClusterAssignment {
  std::vector<std::vector<int>> clusters;
};

struct QuotientGraph {
  ServiceDag dag;
  // Quotient node id of each cluster, in assignment order.
  std::vector<int> cluster_nodes;
  // Original node id -> quotient node id.
  std::map<int, int> node_map;
};

// Max-flow value through `subdag` with every node split into an arc of its
// capacity, a super-source feeding all entry nodes and a super-sink draining
// all exit nodes. Throws std::invalid_argument on an empty DAG.
int64_t MaxFlowCapacity(const ServiceDag& subdag);

// Sub-DAG induced by `ids` (kind Custom).
ServiceDag InducedSubdag(const ServiceDag& dag, const std::vector<int>& ids);

// Throws std::invalid_argument on overlapping clusters, clusters containing
// leaves or unknown nodes, empty or disconnected clusters.
QuotientGraph Contract(const ServiceDag& dag, const ClusterAssignment& clusters);

// Rank function over the quotient's leaves. Throws std::invalid_argument
// unless the quotient classifies as Linear, Tree or SeriesParallel.
RankFunction AgentFacingRegion(const QuotientGraph& q);

// The single cluster made of every non-leaf node of `dag`.
ClusterAssignment InternalCoreCluster(const ServiceDag& dag);

}  // namespace svcmarket

#endif  // SVCMARKET_ENCAPSULATION_H_
