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

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <stdexcept>

#include "svcmarket/random_instances.h"

namespace svcmarket {
namespace {

SliceMarket Market(std::vector<std::pair<std::vector<int>, int64_t>> blocks,
                   int types, std::vector<UnitValuation> bidders,
                   int64_t v_max = 6) {
  return SliceMarket{std::vector<SliceType>(types),
                     RankFunction::FromBlocks(types, blocks), std::move(bidders),
                     v_max};
}

// Best welfare with bidder `skip` removed, by plain recursion.
int64_t OracleWelfare(const SliceMarket& m, int skip) {
  const int k = static_cast<int>(m.types.size());
  std::vector<int64_t> count(k, 0);
  std::function<int64_t(size_t)> go = [&](size_t i) -> int64_t {
    if (i == m.bidders.size()) return 0;
    int64_t best = go(i + 1);
    if (static_cast<int>(i) == skip) return best;
    for (int s = 0; s < k; ++s) {
      ++count[s];
      if (m.supply.Feasible(count)) {
        best = std::max(best, m.bidders[i][s] + go(i + 1));
      }
      --count[s];
    }
    return best;
  };
  return go(0);
}

int64_t Value(const SliceMarket& m, size_t i, const std::optional<int>& s) {
  return s ? m.bidders[i][*s] : 0;
}

TEST(DemandTest, Fixtures) {
  EXPECT_EQ(Demand({5, 3}, {0, 0}), 0);
  EXPECT_EQ(Demand({5, 3}, {5, 0}), 1);
  EXPECT_EQ(Demand({2, 2}, {3, 3}), std::nullopt);
  EXPECT_THROW(Demand({2, 2}, {3}), std::invalid_argument);
}

TEST(GsCheckTest, UnitDemandPasses) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int64_t> val(0, 6);
  for (int trial = 0; trial < 100; ++trial) {
    UnitValuation v(3);
    for (auto& x : v) x = val(rng);
    EXPECT_TRUE(GsCheck(UnitDemandBundles(v), 3, 6));
  }
  EXPECT_TRUE(GsCheck(UnitDemandBundles({0, 0}), 2, 4));
}

TEST(GsCheckTest, ComplementFails) {
  EXPECT_FALSE(GsCheck(PairComplementBundles(2, 6), 2, 6));
}

TEST(WelfareMaxTest, Fixtures) {
  WelfareAssignment one = WelfareMax(Market({{{0}, 1}, {{1}, 1}}, 2, {{5, 3}}));
  EXPECT_EQ(one.total, 5);
  EXPECT_EQ(one.assignment[0], 0);
  WelfareAssignment two = WelfareMax(Market({{{0}, 1}}, 1, {{5}, {3}}));
  EXPECT_EQ(two.total, 5);
  EXPECT_EQ(two.assignment[0], 0);
  EXPECT_EQ(two.assignment[1], std::nullopt);
}

TEST(WelfareMaxTest, SharedBottleneck) {
  SliceMarket m = Market({{{0}, 2}, {{1}, 2}, {{0, 1}, 2}}, 2,
                         {{6, 5}, {4, 6}, {5, 1}});
  WelfareAssignment w = WelfareMax(m);
  EXPECT_EQ(w.total, OracleWelfare(m, -1));
  EXPECT_EQ(w.total, 12);
  int assigned = 0;
  for (const auto& a : w.assignment) assigned += a.has_value();
  EXPECT_EQ(assigned, 2);
}

TEST(WelfareMaxTest, MatchesOracleOnRandomMarkets) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    SliceMarket m = RandomSliceMarket(rng, 4, 3, 6);
    EXPECT_EQ(WelfareMax(m).total, OracleWelfare(m, -1));
  }
}

TEST(VcgTest, SecondPrice) {
  AuctionOutcome o = Vcg(Market({{{0}, 1}}, 1, {{5}, {3}}));
  EXPECT_EQ(o.assignment[0], 0);
  EXPECT_EQ(o.payments[0], 3);
  EXPECT_EQ(o.payments[1], 0);
}

TEST(VcgTest, SingleBidderPaysNothing) {
  AuctionOutcome o = Vcg(Market({{{0}, 1}, {{1}, 1}}, 2, {{6, 4}}));
  EXPECT_EQ(o.payments[0], 0);
}

TEST(VcgTest, PaymentsAreExternalities) {
  std::mt19937_64 rng(4);
  std::vector<SliceMarket> markets{
      Market({{{0}, 2}, {{1}, 2}, {{0, 1}, 2}}, 2, {{6, 5}, {4, 6}, {5, 1}})};
  for (int trial = 0; trial < 50; ++trial) {
    markets.push_back(RandomSliceMarket(rng, 3, 2, 6));
  }
  for (const auto& m : markets) {
    AuctionOutcome o = Vcg(m);
    int64_t total = 0;
    for (size_t i = 0; i < m.bidders.size(); ++i) {
      total += Value(m, i, o.assignment[i]);
    }
    for (size_t i = 0; i < m.bidders.size(); ++i) {
      int64_t others = total - Value(m, i, o.assignment[i]);
      EXPECT_EQ(o.payments[i], OracleWelfare(m, static_cast<int>(i)) - others);
    }
  }
}

TEST(DsicTest, VcgRandom) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    SliceMarket m = RandomSliceMarket(rng, 3, 2, 4);
    DsicReport r = DsicTest(m, MechanismKind::kVcg);
    EXPECT_TRUE(r.ok) << "bidder " << r.bidder;
  }
}

TEST(DsicTest, ClinchingRandom) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    SliceMarket m = RandomSingleTypeMarket(rng, 4, 3, 6);
    DsicReport r = DsicTest(m, MechanismKind::kClinching);
    EXPECT_TRUE(r.ok) << "bidder " << r.bidder;
  }
}

TEST(DsicTest, FirstPriceFails) {
  SliceMarket m = Market({{{0}, 1}}, 1, {{5}, {3}});
  EXPECT_FALSE(DsicTest(m, FirstPrice, false).ok);
}

TEST(WalrasianVerifyTest, Fixtures) {
  SliceMarket slack = Market({{{0}, 3}}, 1, {{5}, {3}});
  EXPECT_TRUE(WalrasianVerify({0}, WelfareMax(slack).assignment, slack));
  SliceMarket tight = Market({{{0}, 1}}, 1, {{5}, {3}});
  EXPECT_TRUE(WalrasianVerify({3}, {0, std::nullopt}, tight));
  EXPECT_FALSE(WalrasianVerify({6}, {0, std::nullopt}, tight));
}

TEST(WalrasianVerifyTest, TwoBiddersOneUnit) {
  for (int64_t a = 0; a <= 6; ++a) {
    for (int64_t b = 0; b <= 6; ++b) {
      SliceMarket m = Market({{{0}, 1}}, 1, {{a}, {b}});
      AuctionOutcome o = Vcg(m);
      int64_t price = 0;
      for (int64_t p : o.payments) price = std::max(price, p);
      EXPECT_TRUE(WalrasianVerify({price}, o.assignment, m))
          << a << " " << b;
    }
  }
}

TEST(ClinchingTest, SecondPrice) {
  AuctionOutcome o = ClinchingAuction(Market({{{0}, 1}}, 1, {{5}, {3}}));
  EXPECT_EQ(o.assignment[0], 0);
  EXPECT_EQ(o.assignment[1], std::nullopt);
  EXPECT_EQ(o.payments[0], 3);
}

TEST(ClinchingTest, NoContention) {
  AuctionOutcome o = ClinchingAuction(Market({{{0}, 2}}, 1, {{4}, {2}}));
  EXPECT_EQ(o.assignment[0], 0);
  EXPECT_EQ(o.assignment[1], 0);
  EXPECT_EQ(o.payments[0], 0);
  EXPECT_EQ(o.payments[1], 0);
}

TEST(ClinchingTest, SharedBottleneckMatchesWelfare) {
  SliceMarket m = Market({{{0}, 2}, {{1}, 2}, {{0, 1}, 2}}, 2,
                         {{6, 0}, {0, 5}, {4, 0}});
  AuctionOutcome o = ClinchingAuction(m);
  int64_t total = 0;
  int64_t paid = 0;
  for (size_t i = 0; i < m.bidders.size(); ++i) {
    total += Value(m, i, o.assignment[i]);
    paid += o.payments[i];
  }
  EXPECT_EQ(total, WelfareMax(m).total);
  EXPECT_GE(paid, 0);
}

TEST(ClinchingTest, RejectsMultiTypeBidder) {
  EXPECT_THROW(ClinchingAuction(Market({{{0}, 1}, {{1}, 1}}, 2, {{2, 3}})),
               std::invalid_argument);
}

}  // namespace
}  // namespace svcmarket
