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

#include "svcmarket/polymatroid.h"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace svcmarket {
namespace {

constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

int64_t SatAdd(int64_t a, int64_t b) { return std::min(kInf, a + b); }

}  // namespace

RankFunction::RankFunction(LeafBlockFamily family,
                           std::map<int, int64_t> capacities)
    : family_(std::move(family)), capacities_(std::move(capacities)) {
  std::sort(family_.ground.begin(), family_.ground.end());
  if (family_.ground.size() > 62) {
    throw std::invalid_argument("ground set larger than 62 leaves");
  }
  for (size_t i = 0; i < family_.ground.size(); ++i) {
    if (!position_.emplace(family_.ground[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate ground leaf");
    }
  }
  for (const auto& [key, leaves] : family_.entries) {
    if (leaves.empty()) throw std::invalid_argument("empty leaf block");
    auto it = capacities_.find(key);
    if (it == capacities_.end() || it->second <= 0) {
      throw std::invalid_argument("missing or non-positive block capacity");
    }
    MaskOf(leaves);  // validates membership
  }
  laminar_ = IsLaminar(family_).laminar;
  BuildForest();
}

RankFunction RankFunction::FromDag(const ServiceDag& dag) {
  std::map<int, int64_t> caps;
  LeafBlockFamily family = LeafBlocks(dag);
  for (const auto& [id, leaves] : family.entries) {
    caps[id] = dag.node(id).capacity;
  }
  return RankFunction(std::move(family), std::move(caps));
}

RankFunction RankFunction::FromBlocks(
    int ground_size,
    const std::vector<std::pair<std::vector<int>, int64_t>>& blocks) {
  LeafBlockFamily family;
  std::map<int, int64_t> caps;
  for (int i = 0; i < ground_size; ++i) family.ground.push_back(i);
  for (size_t b = 0; b < blocks.size(); ++b) {
    std::vector<int> leaves = blocks[b].first;
    std::sort(leaves.begin(), leaves.end());
    family.entries[static_cast<int>(b)] = leaves;
    caps[static_cast<int>(b)] = blocks[b].second;
  }
  return RankFunction(std::move(family), std::move(caps));
}

int RankFunction::Position(int leaf) const {
  auto it = position_.find(leaf);
  if (it == position_.end()) {
    throw std::invalid_argument("leaf not in ground set: " +
                                std::to_string(leaf));
  }
  return it->second;
}

LeafMask RankFunction::MaskOf(const std::vector<int>& leaves) const {
  LeafMask m = 0;
  for (int l : leaves) m |= LeafMask{1} << Position(l);
  return m;
}

void RankFunction::BuildForest() {
  std::map<LeafMask, int64_t> distinct;
  auto add = [&](LeafMask m, int64_t cap) {
    auto [it, inserted] = distinct.emplace(m, cap);
    if (!inserted) it->second = std::min(it->second, cap);
  };
  for (const auto& [key, leaves] : family_.entries) {
    add(MaskOf(leaves), capacities_.at(key));
  }
  if (bounds_) {
    for (const auto& [leaf, u] : *bounds_) add(LeafMask{1} << Position(leaf), u);
  }
  blocks_.clear();
  roots_.clear();
  for (const auto& [m, cap] : distinct) blocks_.push_back({m, cap, -1, {}});
  // Larger sets first so every parent precedes its children.
  std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) {
    int pa = std::popcount(a.mask);
    int pb = std::popcount(b.mask);
    return pa != pb ? pa > pb : a.mask < b.mask;
  });
  LeafMask covered = 0;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    covered |= blocks_[i].mask;
    if (!laminar_) continue;
    int best = -1;
    for (size_t j = 0; j < i; ++j) {
      bool superset = (blocks_[j].mask & blocks_[i].mask) == blocks_[i].mask;
      if (superset && (best < 0 || std::popcount(blocks_[j].mask) <
                                       std::popcount(blocks_[best].mask))) {
        best = static_cast<int>(j);
      }
    }
    blocks_[i].parent = best;
    if (best < 0) {
      roots_.push_back(static_cast<int>(i));
    } else {
      blocks_[best].children.push_back(static_cast<int>(i));
    }
  }
  LeafMask all = family_.ground.size() == 64
                     ? ~LeafMask{0}
                     : (LeafMask{1} << family_.ground.size()) - 1;
  if ((covered & all) != all) {
    throw std::invalid_argument("ground leaf not covered by any block");
  }
}

int64_t RankFunction::EvalBlock(int b, LeafMask s) const {
  const Block& blk = blocks_[b];
  LeafMask here = blk.mask & s;
  if (here == 0) return 0;
  int64_t sum = 0;
  LeafMask covered = 0;
  for (int c : blk.children) {
    sum = SatAdd(sum, EvalBlock(c, s));
    covered |= blocks_[c].mask;
  }
  if ((here & ~covered) != 0) sum = kInf;
  return std::min(blk.cap, sum);
}

int64_t RankFunction::CoverMin(LeafMask s) const {
  if (s == 0) return 0;
  int e = std::countr_zero(s);
  int64_t best = kInf;
  for (const Block& blk : blocks_) {
    if ((blk.mask >> e) & 1) {
      best = std::min(best, SatAdd(blk.cap, CoverMin(s & ~blk.mask)));
    }
  }
  return best;
}

int64_t RankFunction::RankMask(LeafMask mask) const {
  if (family_.ground.size() < 64 && (mask >> family_.ground.size()) != 0) {
    throw std::invalid_argument("mask outside ground set");
  }
  if (!laminar_) return CoverMin(mask);
  int64_t total = 0;
  for (int r : roots_) total = SatAdd(total, EvalBlock(r, mask));
  return total;
}

int64_t RankFunction::Rank(const std::vector<int>& leaves) const {
  return RankMask(MaskOf(leaves));
}

RankFunction RankFunction::Truncate(
    const std::map<int, int64_t>& bounds) const {
  RankFunction out = *this;
  std::map<int, int64_t> merged = bounds_.value_or(std::map<int, int64_t>{});
  for (const auto& [leaf, u] : bounds) {
    if (u < 0) throw std::invalid_argument("negative leaf bound");
    Position(leaf);
    auto [it, inserted] = merged.emplace(leaf, u);
    if (!inserted) it->second = std::min(it->second, u);
  }
  out.bounds_ = std::move(merged);
  out.BuildForest();
  return out;
}

bool RankFunction::Feasible(const std::vector<int64_t>& alloc) const {
  if (alloc.size() != family_.ground.size()) return false;
  for (int64_t x : alloc) {
    if (x < 0) return false;
  }
  auto sum_over = [&](LeafMask m) {
    int64_t s = 0;
    for (size_t i = 0; i < alloc.size(); ++i) {
      if ((m >> i) & 1) s += alloc[i];
    }
    return s;
  };
  if (laminar_) {
    for (const Block& blk : blocks_) {
      if (sum_over(blk.mask) > blk.cap) return false;
    }
    return true;
  }
  // Non-laminar families: check x(S) <= f(S) on every subset.
  if (alloc.size() > 20) {
    throw std::invalid_argument("feasibility check too large");
  }
  for (LeafMask s = 1; s < (LeafMask{1} << alloc.size()); ++s) {
    if (sum_over(s) > RankMask(s)) return false;
  }
  return true;
}

AxiomReport VerifyPolymatroid(int n,
                              const std::function<int64_t(LeafMask)>& f) {
  if (n < 0 || n > 12) {
    throw std::invalid_argument("ground set too large for exhaustive check");
  }
  const LeafMask full = LeafMask{1} << n;
  std::vector<int64_t> v(full);
  for (LeafMask s = 0; s < full; ++s) v[s] = f(s);
  AxiomReport r;
  if (v[0] != 0) {
    r.ok = false;
    r.violation = "normalization";
    return r;
  }
  // Monotonicity on every nested pair reduces to single-element steps, but
  // all nested pairs are enumerated to report the first one literally.
  for (LeafMask t = 0; t < full; ++t) {
    for (LeafMask s = t;; s = (s - 1) & t) {
      if (v[s] > v[t]) {
        r.ok = false;
        r.violation = "monotonicity";
        r.s = s;
        r.t = t;
        return r;
      }
      if (s == 0) break;
    }
  }
  for (LeafMask t = 0; t < full; ++t) {
    for (int e = 0; e < n; ++e) {
      LeafMask bit = LeafMask{1} << e;
      if (t & bit) continue;
      int64_t gain_t = v[t | bit] - v[t];
      for (LeafMask s = t;; s = (s - 1) & t) {
        if (v[s | bit] - v[s] < gain_t) {
          r.ok = false;
          r.violation = "submodularity";
          r.s = s;
          r.t = t;
          r.element = e;
          return r;
        }
        if (s == 0) break;
      }
    }
  }
  return r;
}

AxiomReport VerifyPolymatroid(const RankFunction& f) {
  return VerifyPolymatroid(f.ground_size(),
                           [&f](LeafMask s) { return f.RankMask(s); });
}

int64_t TruncatedRankByDefinition(const RankFunction& base,
                                  const std::map<int, int64_t>& bounds,
                                  LeafMask s) {
  int64_t best = kInf;
  for (LeafMask t = s;; t = (t - 1) & s) {
    int64_t val = base.RankMask(t);
    LeafMask rest = s & ~t;
    for (int i = 0; i < base.ground_size(); ++i) {
      if (!((rest >> i) & 1)) continue;
      auto it = bounds.find(base.ground()[i]);
      val = SatAdd(val, it == bounds.end() ? kInf : it->second);
    }
    best = std::min(best, val);
    if (t == 0) break;
  }
  return best;
}

namespace {

int64_t ValueOf(const std::vector<int64_t>& marginals, int64_t units) {
  int64_t total = 0;
  for (int64_t k = 0; k < units && k < static_cast<int64_t>(marginals.size());
       ++k) {
    total += marginals[k];
  }
  return total;
}

void CheckValues(const RankFunction& f,
                 const std::vector<std::vector<int64_t>>& values) {
  if (static_cast<int>(values.size()) != f.ground_size()) {
    throw std::invalid_argument("one marginal list per ground leaf required");
  }
  for (const auto& list : values) {
    for (size_t k = 0; k < list.size(); ++k) {
      if (list[k] < 0 || (k > 0 && list[k] > list[k - 1])) {
        throw std::invalid_argument(
            "marginal values must be non-negative and non-increasing");
      }
    }
  }
}

}  // namespace

WelfareResult GreedyWelfareMax(const RankFunction& f,
                               const std::vector<std::vector<int64_t>>& values) {
  CheckValues(f, values);
  // (value, leaf position, unit index); sorted value desc, then asc.
  std::vector<std::tuple<int64_t, int, int>> items;
  for (size_t l = 0; l < values.size(); ++l) {
    for (size_t k = 0; k < values[l].size(); ++k) {
      if (values[l][k] > 0) {
        items.emplace_back(values[l][k], static_cast<int>(l),
                           static_cast<int>(k));
      }
    }
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
    return std::get<2>(a) < std::get<2>(b);
  });
  WelfareResult result;
  result.allocation.assign(values.size(), 0);
  for (const auto& [value, leaf, unit] : items) {
    // Units of one leaf arrive in order, so a skipped unit blocks later ones.
    if (result.allocation[leaf] != unit) continue;
    ++result.allocation[leaf];
    if (f.Feasible(result.allocation)) {
      result.total += value;
    } else {
      --result.allocation[leaf];
    }
  }
  return result;
}

WelfareResult BruteForceWelfareMax(
    const RankFunction& f, const std::vector<std::vector<int64_t>>& values) {
  CheckValues(f, values);
  const int n = f.ground_size();
  std::vector<int64_t> upper(n);
  double space = 1.0;
  for (int i = 0; i < n; ++i) {
    upper[i] = f.RankMask(LeafMask{1} << i);
    space *= static_cast<double>(upper[i] + 1);
  }
  if (space > 1e6) throw std::invalid_argument("search space too large");
  WelfareResult best;
  best.allocation.assign(n, 0);
  best.total = 0;
  std::vector<int64_t> x(n, 0);
  // Lexicographic enumeration: first position varies slowest.
  while (true) {
    if (f.Feasible(x)) {
      int64_t total = 0;
      for (int i = 0; i < n; ++i) total += ValueOf(values[i], x[i]);
      if (total > best.total) {
        best.total = total;
        best.allocation = x;
      }
    }
    int i = n - 1;
    while (i >= 0 && x[i] == upper[i]) {
      x[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++x[i];
  }
  return best;
}

}  // namespace svcmarket
