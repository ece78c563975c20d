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

#include "svcmarket/theory_suite.h"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>

#include "svcmarket/auctions.h"
#include "svcmarket/encapsulation.h"
#include "svcmarket/graph.h"
#include "svcmarket/polymatroid.h"
#include "svcmarket/random_instances.h"

namespace svcmarket {
namespace {

std::string MaskText(LeafMask m) {
  std::ostringstream out;
  out << "0x" << std::hex << m;
  return out.str();
}

std::string Describe(const AxiomReport& r) {
  return r.violation + " at S=" + MaskText(r.s) + " T=" + MaskText(r.t) +
         " e=" + std::to_string(r.element);
}

void Fail(CheckResult& c, const std::string& why) {
  if (!c.passed) return;  // keep the first failure
  c.passed = false;
  c.detail = why;
}

// Single-unit market: one type with capacity 1.
SliceMarket OneUnit(int64_t a, int64_t b) {
  SliceMarket m{{SliceType{}}, RankFunction::FromBlocks(1, {{{0}, 1}}), {{a}, {b}}, 6};
  return m;
}

CheckResult NewCheck(int criterion, const char* name) {
  CheckResult c;
  c.criterion = criterion;
  c.name = name;
  return c;
}

}  // namespace

std::vector<CheckResult> RunTheorySuite(const TheorySuiteOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<CheckResult> out;

  // Laminar reachability and the polymatroid axioms.
  CheckResult lam = NewCheck(1, "laminar_polymatroid");
  std::vector<RankFunction> ranks;
  auto check_dag = [&](const ServiceDag& dag, const LeafBlockFamily& fam,
                       const std::string& tag) {
    ++lam.instances;
    LaminarityReport lr = IsLaminar(fam);
    if (!lr.laminar) {
      Fail(lam, tag + ": blocks of nodes " + std::to_string(lr.witness->first) + " and " +
                    std::to_string(lr.witness->second) + " cross");
      return;
    }
    RankFunction f = RankFunction::FromDag(dag);
    AxiomReport r = VerifyPolymatroid(f);
    if (!r.ok) Fail(lam, tag + ": " + Describe(r));
    ranks.push_back(f);
  };
  for (int i = 0; i < opt.trees; ++i) {
    ServiceDag dag = RandomTree(rng, 6, 9);
    check_dag(dag, LeafBlocks(dag), "tree #" + std::to_string(i));
  }
  for (int i = 0; i < opt.sp_terms; ++i) {
    auto [dag, fam] = SpCompose(RandomSpTerm(rng, 6, 9));
    check_dag(dag, fam, "sp term #" + std::to_string(i));
  }
  if (opt.inject_non_laminar) {
    ++lam.instances;
    LeafBlockFamily bad;
    bad.ground = {10, 11, 12};
    bad.entries[0] = {10, 11};
    bad.entries[1] = {11, 12};
    LaminarityReport lr = IsLaminar(bad);
    if (!lr.laminar) Fail(lam, "injected fixture: blocks {10,11} and {11,12} cross");
  }
  if (lam.passed) lam.detail = "all instances laminar and polymatroidal";
  out.push_back(lam);

  // Truncation by per-leaf bounds keeps the polymatroid structure.
  CheckResult trunc = NewCheck(2, "truncation_closure");
  for (int i = 0; i < opt.truncations; ++i) {
    const RankFunction& base = ranks[static_cast<size_t>(i) % ranks.size()];
    RankFunction t = base.Truncate(RandomBounds(rng, base, 6));
    ++trunc.instances;
    AxiomReport r = VerifyPolymatroid(t);
    if (!r.ok) Fail(trunc, "truncation #" + std::to_string(i) + ": " + Describe(r));
  }
  if (trunc.passed) trunc.detail = "every truncation polymatroidal";
  out.push_back(trunc);

  // Greedy against exhaustive search.
  CheckResult greedy = NewCheck(3, "greedy_equals_brute_force");
  std::uniform_int_distribution<int64_t> val(0, 9);
  for (int i = 0; i < opt.welfare_instances; ++i) {
    RankFunction f = RandomLaminarRank(rng, 5, 6);
    std::vector<std::vector<int64_t>> values(f.ground_size());
    for (auto& v : values) {
      v.resize(4);
      for (auto& x : v) x = val(rng);
      std::sort(v.rbegin(), v.rend());
    }
    ++greedy.instances;
    WelfareResult g = GreedyWelfareMax(f, values);
    WelfareResult b = BruteForceWelfareMax(f, values);
    if (g.total != b.total) {
      Fail(greedy, "instance #" + std::to_string(i) + ": greedy " + std::to_string(g.total) +
                       " vs optimum " + std::to_string(b.total));
    }
  }
  if (greedy.passed) greedy.detail = "totals equal on every instance";
  out.push_back(greedy);

  // Incentive compatibility.
  CheckResult vcg = NewCheck(4, "dsic_vcg");
  for (int i = 0; i < opt.dsic_instances; ++i) {
    SliceMarket m = RandomSliceMarket(rng, 3, 2, 4);
    ++vcg.instances;
    DsicReport r = DsicTest(m, MechanismKind::kVcg);
    if (!r.ok) Fail(vcg, "instance #" + std::to_string(i) + ": bidder " + std::to_string(r.bidder) + " gains by misreporting");
  }
  if (vcg.passed) vcg.detail = "no profitable misreport";
  out.push_back(vcg);

  CheckResult clinch = NewCheck(4, "dsic_clinching");
  CheckResult budget = NewCheck(4, "clinching_weak_budget_balance");
  for (int i = 0; i < opt.dsic_instances; ++i) {
    SliceMarket m = RandomSingleTypeMarket(rng, 4, 3, 6);
    ++clinch.instances;
    ++budget.instances;
    DsicReport r = DsicTest(m, MechanismKind::kClinching);
    if (!r.ok) Fail(clinch, "instance #" + std::to_string(i) + ": bidder " + std::to_string(r.bidder) + " gains by misreporting");
    AuctionOutcome o = ClinchingAuction(m);
    int64_t total = 0;
    for (int64_t p : o.payments) total += p;
    if (total < 0) Fail(budget, "instance #" + std::to_string(i) + ": payments sum to " + std::to_string(total));
  }
  if (clinch.passed) clinch.detail = "no profitable misreport";
  if (budget.passed) budget.detail = "payments never negative in total";
  out.push_back(clinch);
  out.push_back(budget);

  CheckResult first = NewCheck(4, "first_price_not_dsic");
  first.instances = 1;
  if (DsicTest(OneUnit(5, 3), FirstPrice, false).ok) {
    Fail(first, "first-price fixture reported truthful");
  } else {
    first.detail = "shading detected as expected";
  }
  out.push_back(first);

  // Walrasian prices and gross substitutes.
  CheckResult wal = NewCheck(5, "walrasian_two_bidders_one_unit");
  for (int64_t a = 0; a <= 6; ++a) {
    for (int64_t b = 0; b <= 6; ++b) {
      SliceMarket m = OneUnit(a, b);
      AuctionOutcome o = Vcg(m);
      int64_t price = 0;
      for (int64_t p : o.payments) price = std::max(price, p);
      ++wal.instances;
      if (!WalrasianVerify({price}, o.assignment, m)) {
        Fail(wal, "values (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }
  if (wal.passed) wal.detail = "VCG price supports every allocation";
  out.push_back(wal);

  CheckResult gs = NewCheck(5, "gross_substitutes");
  for (int items = 1; items <= 3; ++items) {
    int combos = 1;
    for (int k = 0; k < items; ++k) combos *= 5;
    for (int code = 0; code < combos; ++code) {
      UnitValuation v(items);
      int c = code;
      for (auto& x : v) {
        x = c % 5;
        c /= 5;
      }
      ++gs.instances;
      if (!GsCheck(UnitDemandBundles(v), items, 4)) Fail(gs, "unit-demand valuation rejected");
    }
  }
  ++gs.instances;
  if (GsCheck(PairComplementBundles(2, 6), 2, 6)) {
    Fail(gs, "complementary pair accepted");
  }
  if (gs.passed) gs.detail = "unit demand passes, complements fail";
  out.push_back(gs);

  // Entangled cores need clustering before the region is polymatroidal.
  CheckResult enc = NewCheck(6, "entangled_encapsulation");
  for (int scale = 1; scale <= 3; ++scale) {
    for (uint64_t seed = 0; seed < 3; ++seed) {
      std::string tag = "scale " + std::to_string(scale) + " seed " + std::to_string(seed);
      ServiceDag dag = BuildTopology(TopologyKind::kEntangled, scale, seed);
      ++enc.instances;
      bool refused = false;
      try {
        AgentFacingRegion(Contract(dag, {}));
      } catch (const std::invalid_argument&) {
        refused = true;
      }
      if (!refused) {
        Fail(enc, tag + ": uncontracted region accepted");
        continue;
      }
      try {
        RankFunction f = AgentFacingRegion(Contract(dag, InternalCoreCluster(dag)));
        AxiomReport r = VerifyPolymatroid(f);
        if (!r.ok) Fail(enc, tag + ": " + Describe(r));
      } catch (const std::exception& e) {
        Fail(enc, tag + ": " + e.what());
      }
    }
  }
  if (enc.passed) enc.detail = "contracted regions polymatroidal";
  out.push_back(enc);
  return out;
}

}  // namespace svcmarket
