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

#include "svcmarket/graph.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

namespace svcmarket {

std::string TierName(Tier tier) {
  switch (tier) {
    case Tier::kDevice: return "device";
    case Tier::kEdge: return "edge";
    case Tier::kCloud: return "cloud";
    case Tier::kNone: return "none";
  }
  return "none";
}

std::string TopologyName(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kLinear: return "linear";
    case TopologyKind::kTree: return "tree";
    case TopologyKind::kSeriesParallel: return "sp";
    case TopologyKind::kEntangled: return "entangled";
    case TopologyKind::kCustom: return "custom";
  }
  return "custom";
}

TopologyKind ParseTopology(const std::string& name) {
  if (name == "linear") return TopologyKind::kLinear;
  if (name == "tree") return TopologyKind::kTree;
  if (name == "sp") return TopologyKind::kSeriesParallel;
  if (name == "entangled") return TopologyKind::kEntangled;
  if (name == "custom") return TopologyKind::kCustom;
  throw std::invalid_argument("unknown topology kind: " + name);
}

ServiceDag::ServiceDag(TopologyKind kind, std::vector<DagNode> nodes,
                       std::vector<std::pair<int, int>> edges)
    : kind_(kind), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].capacity <= 0) {
      throw std::invalid_argument("node capacity must be positive");
    }
    if (!index_.emplace(nodes_[i].id, static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate node id");
    }
  }
  succ_.assign(nodes_.size(), {});
  pred_.assign(nodes_.size(), {});
  for (const auto& [from, to] : edges_) {
    if (!HasNode(from) || !HasNode(to)) {
      throw std::invalid_argument("edge references unknown node");
    }
    if (from == to) throw std::invalid_argument("self-loop");
    succ_[Index(from)].push_back(to);
    pred_[Index(to)].push_back(from);
  }
  for (auto& s : succ_) std::sort(s.begin(), s.end());
  for (auto& p : pred_) std::sort(p.begin(), p.end());
  if (TopologicalOrder().size() != nodes_.size()) {
    throw std::invalid_argument("edge relation has a cycle");
  }
  for (const auto& n : nodes_) {
    if (succ_[Index(n.id)].empty()) leaves_.push_back(n.id);
  }
  std::sort(leaves_.begin(), leaves_.end());
}

int ServiceDag::Index(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::invalid_argument("unknown node id");
  return it->second;
}

bool ServiceDag::HasNode(int id) const { return index_.count(id) > 0; }

const DagNode& ServiceDag::node(int id) const { return nodes_[Index(id)]; }

bool ServiceDag::IsLeaf(int id) const { return succ_[Index(id)].empty(); }

const std::vector<int>& ServiceDag::Successors(int id) const {
  return succ_[Index(id)];
}

const std::vector<int>& ServiceDag::Predecessors(int id) const {
  return pred_[Index(id)];
}

std::vector<int> ServiceDag::TopologicalOrder() const {
  std::map<int, int> indegree;
  for (const auto& n : nodes_) indegree[n.id] = 0;
  for (const auto& e : edges_) ++indegree[e.second];
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (const auto& [id, d] : indegree) {
    if (d == 0) ready.push(id);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    int id = ready.top();
    ready.pop();
    order.push_back(id);
    for (int next : succ_[index_.at(id)]) {
      if (--indegree[next] == 0) ready.push(next);
    }
  }
  return order;
}

std::vector<int> ServiceDag::ReachableLeaves(int id) const {
  std::set<int> seen{id};
  std::vector<int> stack{id};
  std::vector<int> out;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (IsLeaf(v)) out.push_back(v);
    for (int w : Successors(v)) {
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool ServiceDag::operator==(const ServiceDag& other) const {
  if (kind_ != other.kind_ || nodes_.size() != other.nodes_.size()) {
    return false;
  }
  // Edge order carries no meaning.
  auto mine = edges_;
  auto theirs = other.edges_;
  std::sort(mine.begin(), mine.end());
  std::sort(theirs.begin(), theirs.end());
  if (mine != theirs) return false;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const auto& a = nodes_[i];
    const auto& b = other.nodes_[i];
    if (a.id != b.id || a.capacity != b.capacity || a.tier != b.tier) {
      return false;
    }
  }
  return true;
}

LeafBlockFamily LeafBlocks(const ServiceDag& dag) {
  LeafBlockFamily family;
  family.ground = dag.leaves();
  for (const auto& n : dag.nodes()) {
    if (!dag.IsLeaf(n.id)) family.entries[n.id] = dag.ReachableLeaves(n.id);
  }
  return family;
}

LaminarityReport IsLaminar(const LeafBlockFamily& family) {
  LaminarityReport report;
  for (auto a = family.entries.begin(); a != family.entries.end(); ++a) {
    for (auto b = std::next(a); b != family.entries.end(); ++b) {
      const auto& x = a->second;
      const auto& y = b->second;
      std::vector<int> common;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                            std::back_inserter(common));
      bool disjoint = common.empty();
      bool nested = common.size() == x.size() || common.size() == y.size();
      if (!disjoint && !nested) {
        report.laminar = false;
        report.witness = std::make_pair(a->first, b->first);
        return report;
      }
    }
  }
  return report;
}

SpTerm::SpTerm(Op op, int64_t capacity, std::shared_ptr<const SpTerm> left,
               std::shared_ptr<const SpTerm> right)
    : op_(op),
      capacity_(capacity),
      left_(std::move(left)),
      right_(std::move(right)) {}

SpTermPtr SpTerm::Edge(int64_t capacity) {
  if (capacity <= 0) throw std::invalid_argument("edge capacity must be > 0");
  return SpTermPtr(new SpTerm(Op::kEdge, capacity, nullptr, nullptr));
}

SpTermPtr SpTerm::Series(SpTermPtr left, SpTermPtr right) {
  if (!left || !right) throw std::invalid_argument("null SP operand");
  return SpTermPtr(
      new SpTerm(Op::kSeries, 0, std::move(left), std::move(right)));
}

SpTermPtr SpTerm::Parallel(SpTermPtr left, SpTermPtr right) {
  if (!left || !right) throw std::invalid_argument("null SP operand");
  return SpTermPtr(
      new SpTerm(Op::kParallel, 0, std::move(left), std::move(right)));
}

namespace {

// Intermediate SP graph: node capacities keyed by id, edges, terminals and
// the leaf set.
struct SpGraph {
  std::map<int, int64_t> capacity;
  std::vector<std::pair<int, int>> edges;
  int source = 0;
  int sink = 0;
  std::set<int> leaves;
};

SpGraph Build(const SpTerm& term, int* next_id) {
  switch (term.op()) {
    case SpTerm::Op::kEdge: {
      SpGraph g;
      g.source = (*next_id)++;
      g.sink = (*next_id)++;
      g.capacity[g.source] = term.capacity();
      g.capacity[g.sink] = term.capacity();
      g.edges.emplace_back(g.source, g.sink);
      g.leaves.insert(g.sink);
      return g;
    }
    case SpTerm::Op::kSeries: {
      SpGraph a = Build(*term.left(), next_id);
      SpGraph b = Build(*term.right(), next_id);
      // The sink of `a` and the source of `b` become one internal glue node,
      // which keeps the id of a's sink and b's source capacity.
      int glue = a.sink;
      a.capacity[glue] = b.capacity.at(b.source);
      a.leaves.erase(glue);
      for (auto [id, cap] : b.capacity) {
        if (id != b.source) a.capacity[id] = cap;
      }
      for (auto [from, to] : b.edges) {
        a.edges.emplace_back(from == b.source ? glue : from,
                             to == b.source ? glue : to);
      }
      a.leaves.insert(b.leaves.begin(), b.leaves.end());
      a.sink = b.sink;
      return a;
    }
    case SpTerm::Op::kParallel: {
      SpGraph a = Build(*term.left(), next_id);
      SpGraph b = Build(*term.right(), next_id);
      // Shared source serving both branches; leaf sets stay disjoint.
      int src = a.source;
      a.capacity[src] += b.capacity.at(b.source);
      for (auto [id, cap] : b.capacity) {
        if (id != b.source) a.capacity[id] = cap;
      }
      for (auto [from, to] : b.edges) {
        a.edges.emplace_back(from == b.source ? src : from, to);
      }
      a.leaves.insert(b.leaves.begin(), b.leaves.end());
      a.sink = b.sink;
      return a;
    }
  }
  throw std::logic_error("bad SP term");
}

// Compacts node ids to 0..n-1 in ascending order of construction id.
ServiceDag ToDag(TopologyKind kind, const SpGraph& g) {
  std::map<int, int> remap;
  for (const auto& [id, cap] : g.capacity) {
    int next = static_cast<int>(remap.size());
    remap[id] = next;
  }
  std::vector<DagNode> nodes;
  for (const auto& [id, cap] : g.capacity) {
    nodes.push_back({remap[id], cap, Tier::kNone});
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [from, to] : g.edges) edges.emplace_back(remap[from], remap[to]);
  return ServiceDag(kind, std::move(nodes), std::move(edges));
}

}  // namespace

std::pair<ServiceDag, LeafBlockFamily> SpCompose(const SpTermPtr& term) {
  if (!term) throw std::invalid_argument("null SP term");
  int next_id = 0;
  SpGraph g = Build(*term, &next_id);
  ServiceDag dag = ToDag(TopologyKind::kSeriesParallel, g);
  LeafBlockFamily family = LeafBlocks(dag);
  return {std::move(dag), std::move(family)};
}

namespace {

// Deterministic capacity jitter in [base, base + spread].
class CapacityDraw {
 public:
  explicit CapacityDraw(uint64_t seed) : rng_(seed) {}
  int64_t operator()(int64_t base, int64_t spread) {
    if (spread <= 0) return base;
    std::uniform_int_distribution<int64_t> d(0, spread);
    return base + d(rng_);
  }

 private:
  std::mt19937_64 rng_;
};

void AddNode(std::vector<DagNode>* nodes, int64_t cap, Tier tier) {
  nodes->push_back({static_cast<int>(nodes->size()), cap, tier});
}

}  // namespace

ServiceDag BuildTopology(TopologyKind kind, int scale, uint64_t seed) {
  if (scale < 1) throw std::invalid_argument("scale must be >= 1");
  CapacityDraw draw(seed);
  std::vector<DagNode> nodes;
  std::vector<std::pair<int, int>> edges;
  switch (kind) {
    case TopologyKind::kLinear: {
      // Scale 1 is the canonical four-stage chain; larger scales give a
      // chain with that many stages.
      int length = scale == 1 ? 4 : scale;
      const Tier tiers[] = {Tier::kDevice, Tier::kEdge, Tier::kCloud,
                            Tier::kCloud};
      for (int i = 0; i < length; ++i) {
        AddNode(&nodes, draw(6, 4), tiers[std::min(i, 3)]);
        if (i > 0) edges.emplace_back(i - 1, i);
      }
      break;
    }
    case TopologyKind::kTree: {
      // Root with two subtrees, each with scale + 1 leaves.
      AddNode(&nodes, draw(10, 4), Tier::kCloud);
      for (int c = 0; c < 2; ++c) {
        int child = static_cast<int>(nodes.size());
        AddNode(&nodes, draw(6, 4), Tier::kEdge);
        edges.emplace_back(0, child);
        for (int l = 0; l <= scale; ++l) {
          int leaf = static_cast<int>(nodes.size());
          AddNode(&nodes, draw(3, 3), Tier::kDevice);
          edges.emplace_back(child, leaf);
        }
      }
      break;
    }
    case TopologyKind::kSeriesParallel: {
      // Source fanning out to 2 * scale two-stage branches.
      AddNode(&nodes, draw(12, 4), Tier::kCloud);
      for (int b = 0; b < 2 * scale; ++b) {
        int first = static_cast<int>(nodes.size());
        AddNode(&nodes, draw(6, 3), Tier::kEdge);
        AddNode(&nodes, draw(3, 3), Tier::kDevice);
        edges.emplace_back(0, first);
        edges.emplace_back(first, first + 1);
      }
      break;
    }
    case TopologyKind::kEntangled: {
      // Source fanning out to 2 * scale branches, each branch head serving
      // two leaves, plus two cross edges per branch pair that make the
      // branch heads' leaf blocks overlap without nesting.
      AddNode(&nodes, draw(12, 4), Tier::kCloud);
      std::vector<int> heads;
      for (int b = 0; b < 2 * scale; ++b) {
        int head = static_cast<int>(nodes.size());
        heads.push_back(head);
        AddNode(&nodes, draw(6, 3), Tier::kEdge);
        AddNode(&nodes, draw(3, 3), Tier::kDevice);
        AddNode(&nodes, draw(3, 3), Tier::kDevice);
        edges.emplace_back(0, head);
        edges.emplace_back(head, head + 1);
        edges.emplace_back(head, head + 2);
      }
      for (size_t p = 0; p + 1 < heads.size(); p += 2) {
        int a = heads[p];
        int b = heads[p + 1];
        edges.emplace_back(a, b + 1);
        edges.emplace_back(b, a + 2);
      }
      break;
    }
    case TopologyKind::kCustom:
      throw std::invalid_argument("custom topologies are not generated");
  }
  return ServiceDag(kind, std::move(nodes), std::move(edges));
}

std::vector<Tier> CriticalTierSequence(TopologyKind kind) {
  using T = Tier;
  switch (kind) {
    case TopologyKind::kLinear:
      return {T::kDevice, T::kEdge, T::kCloud, T::kCloud};
    case TopologyKind::kTree:
      return {T::kDevice, T::kDevice, T::kDevice, T::kEdge, T::kCloud,
              T::kCloud};
    case TopologyKind::kSeriesParallel:
      return {T::kDevice, T::kDevice, T::kEdge, T::kEdge, T::kCloud,
              T::kCloud};
    case TopologyKind::kEntangled:
      // Cross edges route the critical path through the edge tier repeatedly.
      return {T::kDevice, T::kDevice, T::kDevice, T::kEdge, T::kEdge,
              T::kEdge,   T::kEdge,   T::kEdge,   T::kCloud};
    case TopologyKind::kCustom:
      break;
  }
  throw std::invalid_argument("no critical tier sequence for custom kind");
}

namespace {

bool IsSeriesParallel(const ServiceDag& dag) {
  // Multigraph edge list over node ids plus virtual terminals.
  const int kSource = -1;
  const int kSink = -2;
  std::multiset<std::pair<int, int>> edges(dag.edges().begin(),
                                           dag.edges().end());
  for (const auto& n : dag.nodes()) {
    if (dag.Predecessors(n.id).empty()) edges.emplace(kSource, n.id);
    if (dag.IsLeaf(n.id)) edges.emplace(n.id, kSink);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    // Parallel reduction.
    for (auto it = edges.begin(); it != edges.end();) {
      auto next = std::next(it);
      if (next != edges.end() && *next == *it) {
        edges.erase(next);
        changed = true;
      } else {
        it = next;
      }
    }
    // Series reduction of one node with a single in- and out-edge.
    std::map<int, std::pair<int, int>> degree;
    for (const auto& [from, to] : edges) {
      ++degree[from].second;
      ++degree[to].first;
    }
    for (const auto& [v, d] : degree) {
      if (v == kSource || v == kSink || d.first != 1 || d.second != 1) continue;
      int in = 0;
      int out = 0;
      for (auto it = edges.begin(); it != edges.end();) {
        if (it->second == v) {
          in = it->first;
          it = edges.erase(it);
        } else if (it->first == v) {
          out = it->second;
          it = edges.erase(it);
        } else {
          ++it;
        }
      }
      edges.emplace(in, out);
      changed = true;
      break;
    }
  }
  return edges.size() == 1 && edges.begin()->first == kSource &&
         edges.begin()->second == kSink;
}

}  // namespace

TopologyKind Classify(const ServiceDag& dag) {
  if (!IsLaminar(LeafBlocks(dag)).laminar) return TopologyKind::kEntangled;
  int roots = 0;
  bool out_tree = true;
  bool path = true;
  for (const auto& n : dag.nodes()) {
    size_t in = dag.Predecessors(n.id).size();
    if (in == 0) ++roots;
    if (in > 1) out_tree = false;
    if (dag.Successors(n.id).size() > 1) path = false;
  }
  if (roots == 1 && out_tree) {
    return path ? TopologyKind::kLinear : TopologyKind::kTree;
  }
  if (IsSeriesParallel(dag)) return TopologyKind::kSeriesParallel;
  return TopologyKind::kCustom;
}

}  // namespace svcmarket
