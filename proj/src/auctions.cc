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

#include "svcmarket/auctions.h"

#include <algorithm>
#include <stdexcept>

namespace svcmarket {

std::optional<int> Demand(const UnitValuation& values,
                          const std::vector<int64_t>& prices) {
  if (prices.size() != values.size()) {
    throw std::invalid_argument("price vector size mismatch");
  }
  std::optional<int> best;
  int64_t best_surplus = 0;
  for (size_t k = 0; k < values.size(); ++k) {
    if (prices[k] < 0) throw std::invalid_argument("negative price");
    int64_t s = values[k] - prices[k];
    if (s > best_surplus) {
      best_surplus = s;
      best = static_cast<int>(k);
    }
  }
  return best;
}

BundleValuation UnitDemandBundles(const UnitValuation& values) {
  const int k = static_cast<int>(values.size());
  BundleValuation v(size_t{1} << k, 0);
  for (int mask = 1; mask < (1 << k); ++mask) {
    for (int j = 0; j < k; ++j) {
      if ((mask >> j) & 1) v[mask] = std::max(v[mask], values[j]);
    }
  }
  return v;
}

BundleValuation PairComplementBundles(int num_items, int64_t pair_value) {
  if (num_items < 2) throw std::invalid_argument("need at least two items");
  BundleValuation v(size_t{1} << num_items, 0);
  for (int mask = 0; mask < (1 << num_items); ++mask) {
    if ((mask & 3) == 3) v[mask] = pair_value;
  }
  return v;
}

namespace {

// Bitset over bundles of the utility-maximizing bundles at `prices`.
uint32_t DemandSet(const BundleValuation& v, int k, const std::vector<int>& p) {
  int64_t best = 0;
  uint32_t set = 0;
  for (int mask = 0; mask < (1 << k); ++mask) {
    int64_t u = v[mask];
    for (int j = 0; j < k; ++j) {
      if ((mask >> j) & 1) u -= p[j];
    }
    if (mask == 0 || u > best) {
      best = u;
      set = uint32_t{1} << mask;
    } else if (u == best) {
      set |= uint32_t{1} << mask;
    }
  }
  return set;
}

}  // namespace

bool GsCheck(const BundleValuation& valuation, int num_items, int grid_max) {
  if (num_items < 1 || num_items > 4) {
    throw std::invalid_argument("gs_check supports 1..4 items");
  }
  if (grid_max < 0 || grid_max > 8) {
    throw std::invalid_argument("price grid too large");
  }
  if (valuation.size() != (size_t{1} << num_items)) {
    throw std::invalid_argument("bundle valuation size mismatch");
  }
  const int base = grid_max + 1;
  int points = 1;
  for (int j = 0; j < num_items; ++j) points *= base;
  auto decode = [&](int code) {
    std::vector<int> p(num_items);
    for (int j = 0; j < num_items; ++j) {
      p[j] = code % base;
      code /= base;
    }
    return p;
  };
  std::vector<uint32_t> demand(points);
  for (int c = 0; c < points; ++c) {
    demand[c] = DemandSet(valuation, num_items, decode(c));
  }
  const int bundles = 1 << num_items;
  for (int c = 0; c < points; ++c) {
    std::vector<int> p = decode(c);
    int stride = 1;
    for (int j = 0; j < num_items; ++j, stride *= base) {
      for (int up = p[j] + 1; up <= grid_max; ++up) {
        uint32_t after = demand[c + (up - p[j]) * stride];
        for (int a = 0; a < bundles; ++a) {
          if (!((demand[c] >> a) & 1)) continue;
          int keep = a & ~(1 << j);
          bool found = false;
          for (int b = 0; b < bundles && !found; ++b) {
            found = ((after >> b) & 1) && (keep & b) == keep;
          }
          if (!found) return false;
        }
      }
    }
  }
  return true;
}

namespace {

int NumTypes(const SliceMarket& m) { return static_cast<int>(m.types.size()); }

void CheckMarket(const SliceMarket& m) {
  if (m.types.empty()) throw std::invalid_argument("market needs K >= 1");
  if (m.supply.ground_size() != NumTypes(m)) {
    throw std::invalid_argument("supply ground set must be the slice types");
  }
  for (const auto& b : m.bidders) {
    if (static_cast<int>(b.size()) != NumTypes(m)) {
      throw std::invalid_argument("valuation size mismatch");
    }
    for (int64_t v : b) {
      if (v < 0 || v > m.v_max) {
        throw std::invalid_argument("value outside {0..v_max}");
      }
    }
  }
}

std::vector<int64_t> Counts(const std::vector<std::optional<int>>& a, int k) {
  std::vector<int64_t> c(k, 0);
  for (const auto& s : a) {
    if (s) ++c[*s];
  }
  return c;
}

int64_t AssignedValue(const UnitValuation& v, const std::optional<int>& s) {
  return s ? v[*s] : 0;
}

}  // namespace

WelfareAssignment WelfareMax(const SliceMarket& market) {
  CheckMarket(market);
  const int k = NumTypes(market);
  const int n = static_cast<int>(market.bidders.size());
  if (n > 6 || k > 4) throw std::invalid_argument("instance too large");
  for (int s = 0; s < k; ++s) {
    if (market.supply.RankMask(LeafMask{1} << s) > 5) {
      throw std::invalid_argument("supply rank too large");
    }
  }
  // Choice k encodes "unassigned" and sorts after every slice index.
  std::vector<int> choice(n, 0);
  WelfareAssignment best;
  best.assignment.assign(n, std::nullopt);
  bool have = false;
  while (true) {
    std::vector<std::optional<int>> a(n);
    int64_t total = 0;
    for (int i = 0; i < n; ++i) {
      if (choice[i] < k) {
        a[i] = choice[i];
        total += market.bidders[i][choice[i]];
      }
    }
    if ((!have || total > best.total) && market.supply.Feasible(Counts(a, k))) {
      best.assignment = a;
      best.total = total;
      have = true;
    }
    int i = n - 1;
    while (i >= 0 && choice[i] == k) {
      choice[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++choice[i];
  }
  return best;
}

AuctionOutcome Vcg(const SliceMarket& market) {
  WelfareAssignment w = WelfareMax(market);
  const int n = static_cast<int>(market.bidders.size());
  AuctionOutcome out;
  out.assignment = w.assignment;
  out.payments.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!w.assignment[i]) continue;
    SliceMarket without = market;
    without.bidders.erase(without.bidders.begin() + i);
    int64_t others_without_i = WelfareMax(without).total;
    int64_t others_with_i =
        w.total - AssignedValue(market.bidders[i], w.assignment[i]);
    out.payments[i] = others_without_i - others_with_i;
  }
  return out;
}

int DesignatedType(const UnitValuation& values) {
  for (size_t k = 0; k < values.size(); ++k) {
    if (values[k] > 0) return static_cast<int>(k);
  }
  return 0;
}

AuctionOutcome ClinchingAuction(const SliceMarket& market) {
  CheckMarket(market);
  const int k = NumTypes(market);
  const int n = static_cast<int>(market.bidders.size());
  std::vector<int> type(n);
  std::vector<int64_t> value(n);
  for (int i = 0; i < n; ++i) {
    type[i] = DesignatedType(market.bidders[i]);
    for (int s = 0; s < k; ++s) {
      if (s != type[i] && market.bidders[i][s] != 0) {
        throw std::invalid_argument("bidder values more than one slice type");
      }
    }
    value[i] = market.bidders[i][type[i]];
  }
  std::vector<bool> active(n, true);
  std::vector<bool> clinched(n, false);
  std::vector<int64_t> base(k, 0);  // units already clinched per type
  AuctionOutcome out;
  out.assignment.assign(n, std::nullopt);
  out.payments.assign(n, 0);

  // Greedy rank of the bidder set on top of the clinched units; the
  // servable bidder sets form a matroid so greedy is exact.
  auto rank = [&](const std::vector<int>& set) {
    std::vector<int64_t> c = base;
    int served = 0;
    for (int i : set) {
      ++c[type[i]];
      if (market.supply.Feasible(c)) {
        ++served;
      } else {
        --c[type[i]];
      }
    }
    return served;
  };

  int64_t price = 0;
  while (true) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < n; ++i) {
        if (!active[i] || clinched[i]) continue;
        std::vector<int> rivals;
        for (int j = 0; j < n; ++j) {
          if (j != i && active[j] && !clinched[j]) rivals.push_back(j);
        }
        std::vector<int> with_i = rivals;
        with_i.push_back(i);
        if (rank(with_i) == rank(rivals) + 1) {
          clinched[i] = true;
          ++base[type[i]];
          out.assignment[i] = type[i];
          out.payments[i] = price;
          changed = true;
        }
      }
    }
    int exiting = -1;
    for (int i = n - 1; i >= 0; --i) {
      if (active[i] && !clinched[i] && value[i] <= price) {
        exiting = i;
        break;
      }
    }
    if (exiting >= 0) {
      active[exiting] = false;
      continue;
    }
    bool remaining = false;
    for (int i = 0; i < n; ++i) remaining |= active[i] && !clinched[i];
    if (!remaining) break;
    ++price;
  }
  return out;
}

bool WalrasianVerify(const std::vector<int64_t>& prices,
                     const std::vector<std::optional<int>>& assignment,
                     const SliceMarket& market) {
  const int k = NumTypes(market);
  if (static_cast<int>(prices.size()) != k ||
      assignment.size() != market.bidders.size()) {
    return false;
  }
  for (int64_t p : prices) {
    if (p < 0) return false;
  }
  for (size_t i = 0; i < assignment.size(); ++i) {
    const auto& v = market.bidders[i];
    int64_t best = 0;
    for (int s = 0; s < k; ++s) best = std::max(best, v[s] - prices[s]);
    if (assignment[i]) {
      int s = *assignment[i];
      if (s < 0 || s >= k || v[s] - prices[s] < best) return false;
    } else if (best > 0) {
      return false;
    }
  }
  std::vector<int64_t> counts = Counts(assignment, k);
  if (!market.supply.Feasible(counts)) return false;
  for (int s = 0; s < k; ++s) {
    if (prices[s] <= 0) continue;
    ++counts[s];
    bool can_add = market.supply.Feasible(counts);
    --counts[s];
    if (can_add) return false;
  }
  return true;
}

AuctionOutcome FirstPrice(const SliceMarket& market) {
  WelfareAssignment w = WelfareMax(market);
  AuctionOutcome out;
  out.assignment = w.assignment;
  out.payments.assign(market.bidders.size(), 0);
  for (size_t i = 0; i < market.bidders.size(); ++i) {
    out.payments[i] = AssignedValue(market.bidders[i], w.assignment[i]);
  }
  return out;
}

DsicReport DsicTest(const SliceMarket& market, const Mechanism& mechanism,
                    bool single_type) {
  CheckMarket(market);
  if (market.v_max > 6) throw std::invalid_argument("misreport grid too large");
  const int k = NumTypes(market);
  const AuctionOutcome truthful = mechanism(market);
  DsicReport report;
  for (size_t i = 0; i < market.bidders.size(); ++i) {
    const UnitValuation& truth = market.bidders[i];
    const int64_t u_true =
        AssignedValue(truth, truthful.assignment[i]) - truthful.payments[i];
    const int designated = DesignatedType(truth);
    const int dims = single_type ? 1 : k;
    std::vector<int64_t> digits(dims, 0);
    while (true) {
      UnitValuation lie(k, 0);
      if (single_type) {
        lie[designated] = digits[0];
      } else {
        lie.assign(digits.begin(), digits.end());
      }
      if (lie != truth) {
        SliceMarket m = market;
        m.bidders[i] = lie;
        AuctionOutcome o = mechanism(m);
        int64_t u = AssignedValue(truth, o.assignment[i]) - o.payments[i];
        if (u > u_true) {
          report.ok = false;
          report.bidder = static_cast<int>(i);
          report.misreport = lie;
          report.truthful_utility = u_true;
          report.misreport_utility = u;
          return report;
        }
      }
      int d = dims - 1;
      while (d >= 0 && digits[d] == market.v_max) {
        digits[d] = 0;
        --d;
      }
      if (d < 0) break;
      ++digits[d];
    }
  }
  return report;
}

DsicReport DsicTest(const SliceMarket& market, MechanismKind kind) {
  if (kind == MechanismKind::kVcg) return DsicTest(market, Vcg, false);
  return DsicTest(market, ClinchingAuction, true);
}

}  // namespace svcmarket
