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

// Desk-scale slice markets: unit-demand demand and gross-substitutes checks,
// exact welfare maximization, VCG, exhaustive DSIC testing, Walrasian
// verification and the single-type clinching auction.

#ifndef SVCMARKET_AUCTIONS_H_
#define SVCMARKET_AUCTIONS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "svcmarket/polymatroid.h"

namespace svcmarket {

struct SliceType {
  double latency_ms = 0.0;
  double quality = 1.0;
};

// values[k] is the bidder's value for one unit of slice type k.
using UnitValuation = std::vector<int64_t>;

struct SliceMarket {
  std::vector<SliceType> types;
  // Supply over slice types; ground leaves are the type indices 0..K-1.
  RankFunction supply;
  std::vector<UnitValuation> bidders;
  int64_t v_max = 0;
};

struct AuctionOutcome {
  std::vector<std::optional<int>> assignment;
  std::vector<int64_t> payments;
  std::optional<std::vector<int64_t>> prices;
};

// Argmax of value - price over strictly positive surpluses; lowest index on
// ties; nullopt when no surplus is positive.
std::optional<int> Demand(const UnitValuation& values,
                          const std::vector<int64_t>& prices);

// Bundle valuation over K <= 4 items: value[mask] for each bundle.
using BundleValuation = std::vector<int64_t>;

BundleValuation UnitDemandBundles(const UnitValuation& values);
// Values only the bundle holding both items 0 and 1, at `pair_value`.
BundleValuation PairComplementBundles(int num_items, int64_t pair_value);

// Kelso-Crawford gross-substitutes check over every price vector of the
// grid {0..grid_max}^K and every single-item price increase. Throws
// std::invalid_argument when K > 4 or grid_max > 8.
bool GsCheck(const BundleValuation& valuation, int num_items, int grid_max);

struct WelfareAssignment {
  std::vector<std::optional<int>> assignment;
  int64_t total = 0;
};

// Exact maximum over feasible assignments. Throws std::invalid_argument
// outside bidders <= 6, K <= 4, every single-type supply rank <= 5.
WelfareAssignment WelfareMax(const SliceMarket& market);

AuctionOutcome Vcg(const SliceMarket& market);

// Single-type clinching auction. `designated[i]` is the only type bidder i
// values; the bidder's value is market.bidders[i][designated[i]]. Throws
// std::invalid_argument when a bidder values any other type.
AuctionOutcome ClinchingAuction(const SliceMarket& market);

// Type a single-type bidder values (the first positive entry, or 0).
int DesignatedType(const UnitValuation& values);

bool WalrasianVerify(const std::vector<int64_t>& prices,
                     const std::vector<std::optional<int>>& assignment,
                     const SliceMarket& market);

enum class MechanismKind { kVcg, kClinching };

using Mechanism = std::function<AuctionOutcome(const SliceMarket&)>;

struct DsicReport {
  bool ok = true;
  int bidder = -1;
  UnitValuation misreport;
  int64_t truthful_utility = 0;
  int64_t misreport_utility = 0;
};

// Enumerates every misreport on {0..v_max}^K per bidder (for clinching,
// only the designated type's value varies). Throws std::invalid_argument
// when v_max > 6.
DsicReport DsicTest(const SliceMarket& market, MechanismKind kind);
DsicReport DsicTest(const SliceMarket& market, const Mechanism& mechanism,
                    bool single_type);

// Pay-your-bid allocation at the efficient assignment (a test fixture that
// is not truthful).
AuctionOutcome FirstPrice(const SliceMarket& market);

}  // namespace svcmarket

#endif  // SVCMARKET_AUCTIONS_H_
