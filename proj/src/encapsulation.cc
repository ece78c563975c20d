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

#include "svcmarket/encapsulation.h"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

namespace svcmarket {
namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS,
                                            boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<
        boost::edge_capacity_t, int64_t,
        boost::property<boost::edge_residual_capacity_t, int64_t,
                        boost::property<boost::edge_reverse_t,
                                        Traits::edge_descriptor>>>>;

void AddArc(FlowGraph& g, int from, int to, int64_t cap) {
  auto capacity = boost::get(boost::edge_capacity, g);
  auto reverse = boost::get(boost::edge_reverse, g);
  auto e = boost::add_edge(from, to, g).first;
  auto r = boost::add_edge(to, from, g).first;
  capacity[e] = cap;
  capacity[r] = 0;
  reverse[e] = r;
  reverse[r] = e;
}

}  // namespace

int64_t MaxFlowCapacity(const ServiceDag& subdag) {
  const auto& nodes = subdag.nodes();
  if (nodes.empty()) throw std::invalid_argument("empty sub-DAG");
  int64_t unbounded = 0;
  for (const auto& n : nodes) unbounded += n.capacity;
  ++unbounded;
  const int n = static_cast<int>(nodes.size());
  // Vertex 2i is node i's in-half, 2i+1 its out-half.
  const int source = 2 * n;
  const int sink = 2 * n + 1;
  FlowGraph g(2 * n + 2);
  std::map<int, int> index;
  for (int i = 0; i < n; ++i) index[nodes[i].id] = i;
  for (int i = 0; i < n; ++i) {
    AddArc(g, 2 * i, 2 * i + 1, nodes[i].capacity);
    if (subdag.Predecessors(nodes[i].id).empty()) {
      AddArc(g, source, 2 * i, unbounded);
    }
    if (subdag.Successors(nodes[i].id).empty()) {
      AddArc(g, 2 * i + 1, sink, unbounded);
    }
  }
  for (const auto& [from, to] : subdag.edges()) {
    AddArc(g, 2 * index[from] + 1, 2 * index[to], unbounded);
  }
  return boost::push_relabel_max_flow(g, source, sink);
}

ServiceDag InducedSubdag(const ServiceDag& dag, const std::vector<int>& ids) {
  std::set<int> keep(ids.begin(), ids.end());
  std::vector<DagNode> nodes;
  for (int id : keep) nodes.push_back(dag.node(id));
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : dag.edges()) {
    if (keep.count(e.first) && keep.count(e.second)) edges.push_back(e);
  }
  return ServiceDag(TopologyKind::kCustom, std::move(nodes), std::move(edges));
}

namespace {

bool WeaklyConnected(const ServiceDag& sub) {
  if (sub.nodes().empty()) return false;
  std::set<int> seen{sub.nodes().front().id};
  std::vector<int> stack{sub.nodes().front().id};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto* list : {&sub.Successors(v), &sub.Predecessors(v)}) {
      for (int w : *list) {
        if (seen.insert(w).second) stack.push_back(w);
      }
    }
  }
  return seen.size() == sub.nodes().size();
}

}  // namespace

QuotientGraph Contract(const ServiceDag& dag, const ClusterAssignment& clusters) {
  std::map<int, int> node_map;
  for (const auto& n : dag.nodes()) node_map[n.id] = n.id;
  int next_id = dag.nodes().empty() ? 0 : node_map.rbegin()->first + 1;
  std::set<int> used;
  std::vector<int> cluster_nodes;
  std::map<int, int64_t> cluster_caps;
  for (const auto& cluster : clusters.clusters) {
    if (cluster.empty()) throw std::invalid_argument("empty cluster");
    for (int id : cluster) {
      if (!dag.HasNode(id)) throw std::invalid_argument("unknown node");
      if (dag.IsLeaf(id)) throw std::invalid_argument("cluster contains leaf");
      if (!used.insert(id).second) {
        throw std::invalid_argument("overlapping clusters");
      }
    }
    ServiceDag sub = InducedSubdag(dag, cluster);
    if (!WeaklyConnected(sub)) {
      throw std::invalid_argument("cluster is not connected");
    }
    int qid = next_id++;
    for (int id : cluster) node_map[id] = qid;
    cluster_nodes.push_back(qid);
    cluster_caps[qid] = MaxFlowCapacity(sub);
  }
  std::vector<DagNode> nodes;
  for (const auto& n : dag.nodes()) {
    if (node_map[n.id] == n.id) nodes.push_back(n);
  }
  for (int qid : cluster_nodes) {
    nodes.push_back({qid, cluster_caps[qid], Tier::kNone});
  }
  std::set<std::pair<int, int>> edges;
  for (const auto& [from, to] : dag.edges()) {
    int a = node_map[from];
    int b = node_map[to];
    if (a != b) edges.emplace(a, b);
  }
  ServiceDag contracted(dag.kind(), std::move(nodes),
                        std::vector<std::pair<int, int>>(edges.begin(),
                                                         edges.end()));
  TopologyKind kind =
      clusters.clusters.empty() ? dag.kind() : Classify(contracted);
  ServiceDag typed(kind, contracted.nodes(), contracted.edges());
  return QuotientGraph{std::move(typed), std::move(cluster_nodes),
                       std::move(node_map)};
}

RankFunction AgentFacingRegion(const QuotientGraph& q) {
  TopologyKind kind = Classify(q.dag);
  if (kind != TopologyKind::kLinear && kind != TopologyKind::kTree &&
      kind != TopologyKind::kSeriesParallel) {
    throw std::invalid_argument("quotient is neither a tree nor series-parallel");
  }
  return RankFunction::FromDag(q.dag);
}

ClusterAssignment InternalCoreCluster(const ServiceDag& dag) {
  ClusterAssignment a;
  std::vector<int> core;
  for (const auto& n : dag.nodes()) {
    if (!dag.IsLeaf(n.id)) core.push_back(n.id);
  }
  if (!core.empty()) a.clusters.push_back(core);
  return a;
}

}  // namespace svcmarket
