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

// Service-dependency DAGs, leaf-block families and series-parallel terms.

#ifndef SVCMARKET_GRAPH_H_
#define SVCMARKET_GRAPH_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace svcmarket {

enum class Tier { kDevice = 0, kEdge = 1, kCloud = 2, kNone = 3 };

enum class TopologyKind { kLinear, kTree, kSeriesParallel, kEntangled, kCustom };

std::string TierName(Tier tier);
std::string TopologyName(TopologyKind kind);
// Accepts the names produced by TopologyName ("linear", "tree", "sp",
// "entangled", "custom"). Throws std::invalid_argument otherwise.
TopologyKind ParseTopology(const std::string& name);

struct DagNode {
  int id = 0;
  int64_t capacity = 1;
  Tier tier = Tier::kNone;
};

// Immutable, validated DAG. Leaves are exactly the nodes without outgoing
// edges.
class ServiceDag {
 public:
  // Throws std::invalid_argument on duplicate ids, unknown edge endpoints,
  // non-positive capacities or cycles.
  ServiceDag(TopologyKind kind, std::vector<DagNode> nodes,
             std::vector<std::pair<int, int>> edges);

  TopologyKind kind() const { return kind_; }
  const std::vector<DagNode>& nodes() const { return nodes_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& leaves() const { return leaves_; }

  bool HasNode(int id) const;
  const DagNode& node(int id) const;
  bool IsLeaf(int id) const;
  const std::vector<int>& Successors(int id) const;
  const std::vector<int>& Predecessors(int id) const;
  // Node ids in a topological order (ties by ascending id).
  std::vector<int> TopologicalOrder() const;
  // Leaves reachable from `id` (sorted).
  std::vector<int> ReachableLeaves(int id) const;

  bool operator==(const ServiceDag& other) const;

 private:
  int Index(int id) const;

  TopologyKind kind_;
  std::vector<DagNode> nodes_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> leaves_;
  std::map<int, int> index_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
};

// Map from internal node id to the sorted set of leaves it reaches.
struct LeafBlockFamily {
  std::map<int, std::vector<int>> entries;
  std::vector<int> ground;  // sorted leaf ids
};

struct LaminarityReport {
  bool laminar = true;
  // Violating pair of node ids (entries keys) when not laminar.
  std::optional<std::pair<int, int>> witness;
};

// Recursive series-parallel term.
class SpTerm {
 public:
  enum class Op { kEdge, kSeries, kParallel };

  static std::shared_ptr<const SpTerm> Edge(int64_t capacity);
  static std::shared_ptr<const SpTerm> Series(
      std::shared_ptr<const SpTerm> left, std::shared_ptr<const SpTerm> right);
  static std::shared_ptr<const SpTerm> Parallel(
      std::shared_ptr<const SpTerm> left, std::shared_ptr<const SpTerm> right);

  Op op() const { return op_; }
  int64_t capacity() const { return capacity_; }
  const std::shared_ptr<const SpTerm>& left() const { return left_; }
  const std::shared_ptr<const SpTerm>& right() const { return right_; }

 private:
  SpTerm(Op op, int64_t capacity, std::shared_ptr<const SpTerm> left,
         std::shared_ptr<const SpTerm> right);

  Op op_;
  int64_t capacity_;
  std::shared_ptr<const SpTerm> left_;
  std::shared_ptr<const SpTerm> right_;
};

using SpTermPtr = std::shared_ptr<const SpTerm>;

// Canonical instance of `kind` at the given scale. Deterministic in all
// arguments; the seed only permutes capacities within their canonical range.
ServiceDag BuildTopology(TopologyKind kind, int scale, uint64_t seed);

LeafBlockFamily LeafBlocks(const ServiceDag& dag);

// Composes a term into a DAG and its leaf-block family.
std::pair<ServiceDag, LeafBlockFamily> SpCompose(const SpTermPtr& term);

LaminarityReport IsLaminar(const LeafBlockFamily& family);

// Tier visits along the zero-congestion critical path of `kind`.
std::vector<Tier> CriticalTierSequence(TopologyKind kind);

// Structural classification: Entangled when the leaf-block family is not
// laminar, otherwise Linear (path), Tree (out-tree), SeriesParallel
// (two-terminal SP after attaching a virtual sink to all leaves) or Custom.
TopologyKind Classify(const ServiceDag& dag);

}  // namespace svcmarket

#endif  // SVCMARKET_GRAPH_H_
