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

#include "svcmarket/simcore.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace svcmarket {
namespace {

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

TEST(SpawnTest, MeanArrivalsMatchRate) {
  std::mt19937_64 rng(7);
  const TierVector tokens{1, 2, 4};
  double total = 0.0;
  int id = 0;
  for (int round = 0; round < 200; ++round) {
    auto tasks = SpawnTasks(rng, 1.0, 50, tokens, round, id);
    id += static_cast<int>(tasks.size());
    total += static_cast<double>(tasks.size());
    for (const auto& t : tasks) {
      ASSERT_GE(t.value, 1.0);
      ASSERT_LE(t.value, 2.0);
      ASSERT_TRUE(t.deadline_ms == 100 || t.deadline_ms == 150 ||
                  t.deadline_ms == 200);
      ASSERT_GE(t.agent, 0);
      ASSERT_LT(t.agent, 50);
      ASSERT_EQ(t.arrival_round, round);
      ASSERT_EQ(t.tokens, tokens);
    }
  }
  EXPECT_NEAR(total / 200.0, 50.0, 3.0);
}

TEST(SpawnTest, RejectsZeroRate) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(SpawnTasks(rng, 0.0, 50, {1, 1, 1}, 0, 0), std::invalid_argument);
}

TEST(SpawnTest, SameSeedSameStream) {
  std::mt19937_64 a(99), b(99);
  for (int round = 0; round < 5; ++round) {
    auto x = SpawnTasks(a, 1.5, 20, {1, 1, 1}, round, 0);
    auto y = SpawnTasks(b, 1.5, 20, {1, 1, 1}, round, 0);
    ASSERT_EQ(x.size(), y.size());
    for (size_t i = 0; i < x.size(); ++i) {
      EXPECT_EQ(x[i].value, y[i].value);
      EXPECT_EQ(x[i].deadline_ms, y[i].deadline_ms);
      EXPECT_EQ(x[i].agent, y[i].agent);
    }
  }
}

TEST(LatencyTest, BidPowerLaw) {
  EXPECT_DOUBLE_EQ(BidLatency(15, 0.0), 15.0);
  EXPECT_NEAR(BidLatency(15, 1.0), 215.0, 1e-9);
  EXPECT_NEAR(BidLatency(5, 0.5), 5 + 200 * std::pow(0.5, 1.2), 1e-9);
  EXPECT_NEAR(BidLatency(5, 0.5), 92.1, 0.05);
}

TEST(LatencyTest, ExecQueueing) {
  EXPECT_DOUBLE_EQ(ExecLatency(50, 0.0, 1.0), 50.0);
  EXPECT_NEAR(ExecLatency(15, 0.5, 1.0), 17.0, 1e-9);
  // clamp at 0.99 then cap the queueing term at 500
  EXPECT_NEAR(ExecLatency(50, 2.0, 1.5), 347.0, 1e-9);
  EXPECT_NEAR(ExecLatency(50, 2.0, 5.0), 550.0, 1e-9);
}

TEST(LatencyTest, RealizedNoiseMoments) {
  std::mt19937_64 rng(3);
  std::vector<double> xs(10000);
  for (double& x : xs) x = RealizeLatency(rng, 100.0);
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  double sd = std::sqrt(ss / (xs.size() - 1));
  EXPECT_GE(mean, 99.0);
  EXPECT_LE(mean, 101.0);
  EXPECT_GE(sd, 9.5);
  EXPECT_LE(sd, 10.5);
  for (double x : xs) EXPECT_GE(x, 0.0);

  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(RealizeLatency(a, 40), RealizeLatency(b, 40));
}

TEST(ValueTest, DecayAndDeadline) {
  EXPECT_EQ(TaskValue(1.5, 151, 150), 0.0);
  EXPECT_NEAR(TaskValue(1.0, 139, 200), 0.499, 0.001);
  EXPECT_DOUBLE_EQ(TaskValue(2.0, 0, 100), 2.0);
  EXPECT_NEAR(TaskValue(1.0, 150, 150), std::exp(-0.75), 1e-12);
}

TEST(TatonnementTest, ZeroDemandIsFixedPoint) {
  TierVector p = TatonnementRound({0, 0, 0}, kTierCapacity,
                                  [](const TierVector&) { return TierVector{}; });
  EXPECT_EQ(p, (TierVector{0, 0, 0}));
}

TEST(TatonnementTest, PersistentExcessClimbsLinearly) {
  int calls = 0;
  auto demand = [&](const TierVector&) {
    ++calls;
    return TierVector{2 * kTierCapacity[0], 2 * kTierCapacity[1], 2 * kTierCapacity[2]};
  };
  TierVector p = TatonnementRound({0, 0, 0}, kTierCapacity, demand);
  for (double x : p) EXPECT_NEAR(x, 0.25 * kTatonnementIterations, 1e-9);
  EXPECT_EQ(calls, kTatonnementIterations);
}

TEST(TatonnementTest, ClearedMarketHoldsPrices) {
  TierVector start{0.3, 0.1, 2.0};
  TierVector p = TatonnementRound(start, kTierCapacity,
                                  [](const TierVector&) { return kTierCapacity; });
  EXPECT_EQ(p, start);
}

TEST(TatonnementTest, WithdrawalStopsTheClimb) {
  // Demand 2C below price 1, nothing above: the price must hover near 1.
  auto demand = [](const TierVector& p) {
    TierVector d{};
    for (int r = 0; r < kNumTiers; ++r) d[r] = p[r] < 1.0 ? 2 * kTierCapacity[r] : 0.0;
    return d;
  };
  TierVector p = TatonnementRound({0, 0, 0}, kTierCapacity, demand);
  for (double x : p) {
    EXPECT_GE(x, 0.5);
    EXPECT_LE(x, 1.25);
  }
}

TEST(TatonnementTest, FloorAndCap) {
  auto none = [](const TierVector&) { return TierVector{}; };
  TierVector p = TatonnementRound({0.1, 0, 0}, kTierCapacity, none);
  EXPECT_EQ(p, (TierVector{0, 0, 0}));
  auto huge = [](const TierVector&) { return TierVector{1e9, 1e9, 1e9}; };
  p = TatonnementRound({999, 999, 999}, kTierCapacity, huge);
  for (double x : p) EXPECT_EQ(x, kPriceCap);
}

TEST(SuccessModelTest, InitialPredictions) {
  SuccessModel m;
  EXPECT_NEAR(m.Predict(0.0), Sigmoid(2.0), 1e-12);
  EXPECT_NEAR(m.Predict(0.0), 0.881, 0.001);
  EXPECT_NEAR(m.Predict(1.0), 0.5, 1e-12);
}

TEST(SuccessModelTest, SgdStepMatchesLogLossGradient) {
  SuccessModel m;
  const double rho = 0.4;
  double p = Sigmoid(2.0 - 2.0 * rho);
  m.Update(rho, false);
  // d/da of log-loss is (p - y), d/db is (p - y) * rho.
  EXPECT_NEAR(m.a(), 2.0 - 0.3 * p, 1e-12);
  EXPECT_NEAR(m.b(), -2.0 - 0.3 * p * rho, 1e-12);
}

TEST(SuccessModelTest, FailuresLowerPrediction) {
  SuccessModel m;
  double last = m.Predict(0.6);
  for (int i = 0; i < 25; ++i) {
    m.Update(0.6, false);
    double now = m.Predict(0.6);
    EXPECT_LT(now, last);
    EXPECT_GT(now, 0.0);
    last = now;
  }
  for (int i = 0; i < 25; ++i) {
    m.Update(0.6, true);
    double now = m.Predict(0.6);
    EXPECT_GT(now, last);
    EXPECT_LT(now, 1.0);
    last = now;
  }
}

TEST(TrustTest, AsymmetricClampedUpdates) {
  EXPECT_NEAR(TrustUpdate(0.8, true), 0.83, 1e-12);
  EXPECT_EQ(TrustUpdate(0.05, false), 0.0);
  EXPECT_EQ(TrustUpdate(0.99, true), 1.0);
  EXPECT_NEAR(TrustUpdate(0.8, false), 0.72, 1e-12);
  EXPECT_THROW(TrustUpdate(1.2, true), std::invalid_argument);
}

TEST(TrustTest, RecoveryCrossesThresholdExactly) {
  // 0.8 - 0.08 + 0.03 must land on 0.75, not a hair below it.
  double t = TrustUpdate(TrustUpdate(0.8, false), true);
  TaskInstance task;
  EXPECT_EQ(MakeGovernance(Governance::kStrict).PoolFor(task, t), 0);
}

TEST(GovernanceTest, Views) {
  TaskInstance urgent;
  urgent.deadline_ms = 100;
  TaskInstance relaxed;
  relaxed.deadline_ms = 200;

  GovernanceView none = MakeGovernance(Governance::kNone);
  ASSERT_EQ(none.fractions, std::vector<double>{1.0});
  EXPECT_EQ(none.PoolFor(urgent, 0.0), 0);

  GovernanceView strict = MakeGovernance(Governance::kStrict);
  EXPECT_NEAR(strict.fractions[strict.PoolFor(relaxed, 0.6)], 0.3, 1e-12);
  EXPECT_NEAR(strict.fractions[strict.PoolFor(relaxed, 0.8)], 0.7, 1e-12);

  GovernanceView moderate = MakeGovernance(Governance::kModerate);
  EXPECT_NE(moderate.PoolFor(urgent, 0.8), moderate.PoolFor(relaxed, 0.8));
  EXPECT_EQ(moderate.PoolFor(relaxed, 0.8), moderate.PoolFor(relaxed, 0.1));

  for (auto g : {Governance::kNone, Governance::kModerate, Governance::kStrict}) {
    auto f = MakeGovernance(g).fractions;
    EXPECT_NEAR(std::accumulate(f.begin(), f.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(IntegratorTest, EmaConvergesGeometrically) {
  IntegratorState s;
  const TierVector p{2.0, 1.0, 0.5};
  for (int k = 1; k <= 30; ++k) {
    s.Observe(p);
    for (int r = 0; r < kNumTiers; ++r) {
      EXPECT_NEAR(s.ema[r], p[r] * (1.0 - std::pow(0.8, k)), 1e-12);
    }
  }
  EXPECT_NEAR(s.Posted()[0], 1.1 * s.ema[0], 1e-12);
}

TEST(IntegratorTest, SlicePriceAndEfficiency) {
  IntegratorState s;
  s.ema = {1.0, 0.0, 0.0};
  EXPECT_NEAR(s.SlicePrice({2, 5, 5}, 0.0), 2.2, 1e-12);
  EXPECT_NEAR(s.SlicePrice({2, 5, 5}, 1.0), 2.2 * 1.15, 1e-12);

  s.efficiency = EfficiencyFor(Architecture::kHybridFull, TopologyKind::kSeriesParallel);
  EXPECT_NEAR(s.Effective({8, 0, 0})[0], 6.0, 1e-12);
  EXPECT_EQ(EfficiencyFor(Architecture::kHybridFull, TopologyKind::kEntangled), 0.85);
  EXPECT_EQ(EfficiencyFor(Architecture::kHybridEmaOnly, TopologyKind::kSeriesParallel), 1.0);
  EXPECT_EQ(EfficiencyFor(Architecture::kNaive, TopologyKind::kEntangled), 1.0);
}

struct Fixture {
  std::vector<TaskInstance> tasks;
  std::vector<Candidate> cands;
  void Add(int deadline, double score, double cost, TierVector tokens) {
    TaskInstance t;
    t.id = static_cast<int>(tasks.size());
    t.deadline_ms = deadline;
    tasks.push_back(t);
    Candidate c;
    c.tokens = tokens;
    c.score = score;
    c.cost = cost;
    cands.push_back(c);
  }
  void Bind() {
    for (size_t i = 0; i < tasks.size(); ++i) cands[i].task = &tasks[i];
  }
};

TEST(AllocateTest, EmptyInput) {
  std::mt19937_64 rng(1);
  std::vector<TierVector> left{kTierCapacity};
  EXPECT_TRUE(Allocate(MechanismType::kMarket, {}, left, rng).empty());
}

TEST(AllocateTest, ZeroPriceMarketMatchesValueGreedy) {
  Fixture f;
  f.Add(200, 0.4, 0.0, {1, 0, 0});
  f.Add(150, 0.9, 0.0, {1, 0, 0});
  f.Bind();
  std::mt19937_64 rng(1);
  std::vector<TierVector> a{{1, 0, 0}}, b{{1, 0, 0}};
  auto m = Allocate(MechanismType::kMarket, f.cands, a, rng);
  auto v = Allocate(MechanismType::kValueGreedy, f.cands, b, rng);
  EXPECT_EQ(m, v);
  EXPECT_EQ(m, std::vector<int>{1});
}

TEST(AllocateTest, EdfPrefersEarlierDeadline) {
  Fixture f;
  f.Add(200, 1.0, 0.0, {1, 0, 0});
  f.Add(100, 0.1, 0.0, {1, 0, 0});
  f.Bind();
  std::mt19937_64 rng(1);
  std::vector<TierVector> left{{1, 0, 0}};
  EXPECT_EQ(Allocate(MechanismType::kEdf, f.cands, left, rng), std::vector<int>{1});
  EXPECT_NEAR(left[0][0], 0.0, 1e-12);
}

TEST(AllocateTest, MarketSkipsNegativeSurplus) {
  Fixture f;
  f.Add(200, 0.5, 0.6, {1, 0, 0});
  f.Add(200, 0.5, 0.1, {1, 0, 0});
  f.Bind();
  std::mt19937_64 rng(1);
  std::vector<TierVector> left{{5, 5, 5}};
  EXPECT_EQ(Allocate(MechanismType::kMarket, f.cands, left, rng), std::vector<int>{1});
}

TEST(AllocateTest, RandomPacksUntilFull) {
  Fixture f;
  for (int i = 0; i < 10; ++i) f.Add(150, 0.0, 0.0, {1, 1, 1});
  f.Bind();
  std::mt19937_64 rng(4);
  std::vector<TierVector> left{{4, 9, 9}};
  auto got = Allocate(MechanismType::kRandom, f.cands, left, rng);
  EXPECT_EQ(got.size(), 4u);
  EXPECT_NEAR(left[0][0], 0.0, 1e-12);
}

TEST(AllocateTest, PoolsAreIsolated) {
  Fixture f;
  f.Add(150, 1.0, 0.0, {1, 0, 0});
  f.Add(150, 1.0, 0.0, {1, 0, 0});
  f.Bind();
  f.cands[1].pool = 1;
  std::mt19937_64 rng(1);
  std::vector<TierVector> left{{1, 0, 0}, {0, 0, 0}};
  EXPECT_EQ(Allocate(MechanismType::kValueGreedy, f.cands, left, rng), std::vector<int>{0});
}

SimConfig Config(TopologyKind kind, double load, MechanismType mech, uint64_t seed) {
  SimConfig c;
  c.topology = kind;
  c.load = load;
  c.mechanism = mech;
  c.seed = seed;
  return c;
}

TEST(RunTest, Deterministic) {
  Calibration cal = DefaultCalibration();
  SimConfig c = Config(TopologyKind::kEntangled, 1.0, MechanismType::kMarket, 11);
  c.governance = Governance::kStrict;
  c.architecture = Architecture::kHybridFull;
  RunRecord a = RunSimulation(c, cal);
  RunRecord b = RunSimulation(c, cal);
  ASSERT_EQ(a.rounds.size(), b.rounds.size());
  for (size_t i = 0; i < a.rounds.size(); ++i) {
    EXPECT_EQ(a.rounds[i].allocated, b.rounds[i].allocated);
    EXPECT_EQ(a.rounds[i].prices, b.rounds[i].prices);
    EXPECT_EQ(a.rounds[i].welfare, b.rounds[i].welfare);
  }
  EXPECT_EQ(a.latencies, b.latencies);
}

TEST(RunTest, TreeLowDropRate) {
  Calibration cal = DefaultCalibration();
  for (uint64_t seed = 0; seed < 3; ++seed) {
    auto rec = RunSimulation(Config(TopologyKind::kTree, 0.5, MechanismType::kMarket, seed), cal);
    EXPECT_GE(rec.summary.drop_rate, 0.30);
    EXPECT_LE(rec.summary.drop_rate, 0.48);
  }
}

TEST(RunTest, LinearPricesNeverMove) {
  Calibration cal = DefaultCalibration();
  for (double load : {0.5, 1.0, 1.5}) {
    auto rec = RunSimulation(Config(TopologyKind::kLinear, load, MechanismType::kMarket, 2), cal);
    EXPECT_EQ(rec.summary.price_volatility, 0.0);
  }
}

TEST(RunTest, RoundInvariants) {
  Calibration cal = DefaultCalibration();
  for (auto kind : {TopologyKind::kTree, TopologyKind::kSeriesParallel, TopologyKind::kEntangled}) {
    for (auto mech : {MechanismType::kRandom, MechanismType::kMarket}) {
      SimConfig c = Config(kind, 1.5, mech, 5);
      c.governance = Governance::kStrict;
      auto rec = RunSimulation(c, cal);
      size_t executed = 0;
      for (const auto& r : rec.rounds) {
        EXPECT_LE(r.allocated, r.spawned);
        EXPECT_EQ(r.allocated, r.completed + r.missed);
        // realized value is at most 2 per spawned task
        EXPECT_LE(r.welfare, 2.0 * r.spawned);
        for (double p : r.prices) {
          EXPECT_GE(p, 0.0);
          EXPECT_LE(p, kPriceCap);
        }
        executed += r.allocated;
      }
      EXPECT_EQ(executed, rec.latencies.size());
    }
  }
}

TEST(RunTest, ZeroPriceMarketEqualsValueGreedy) {
  Calibration cal = DefaultCalibration();
  auto m = RunSimulation(Config(TopologyKind::kTree, 1.0, MechanismType::kMarket, 8), cal);
  auto v = RunSimulation(Config(TopologyKind::kTree, 1.0, MechanismType::kValueGreedy, 8), cal);
  for (const auto& r : m.rounds) {
    for (double p : r.prices) ASSERT_EQ(p, 0.0);
  }
  ASSERT_EQ(m.rounds.size(), v.rounds.size());
  for (size_t i = 0; i < m.rounds.size(); ++i) {
    EXPECT_EQ(m.rounds[i].allocated, v.rounds[i].allocated);
    EXPECT_EQ(m.rounds[i].completed, v.rounds[i].completed);
  }
  EXPECT_EQ(m.latencies, v.latencies);
}

TEST(RunTest, SpawnedTasksIndependentOfMechanism) {
  Calibration cal = DefaultCalibration();
  auto a = RunSimulation(Config(TopologyKind::kSeriesParallel, 1.0, MechanismType::kRandom, 3), cal);
  auto b = RunSimulation(Config(TopologyKind::kSeriesParallel, 1.0, MechanismType::kEdf, 3), cal);
  for (size_t i = 0; i < a.rounds.size(); ++i) {
    EXPECT_EQ(a.rounds[i].spawned, b.rounds[i].spawned);
    EXPECT_EQ(a.rounds[i].demand, b.rounds[i].demand);
  }
}

TEST(RunTest, RejectsInvalidConfig) {
  Calibration cal = DefaultCalibration();
  SimConfig c;
  c.load = 0.0;
  EXPECT_THROW(RunSimulation(c, cal), std::invalid_argument);
  c.load = 1.0;
  c.n_agents = 0;
  EXPECT_THROW(RunSimulation(c, cal), std::invalid_argument);
  c.n_agents = 5;
  c.topology = TopologyKind::kCustom;
  EXPECT_THROW(RunSimulation(c, cal), std::invalid_argument);
}

TEST(MetricsTest, ConstantPricesHaveZeroVolatility) {
  EXPECT_EQ(PriceVolatility({{3, 3, 3, 3}, {0, 0, 0}}), 0.0);
}

TEST(MetricsTest, VolatilityOfAlternatingSeries) {
  // returns alternate +/- log 2, so the population std is log 2
  std::vector<double> s{0, 1, 0, 1, 0};
  EXPECT_NEAR(PriceVolatility({s}), std::log(2.0), 1e-12);
  EXPECT_NEAR(PriceVolatility({s, {0, 0, 0, 0, 0}}), std::log(2.0) / 2, 1e-12);
}

TEST(MetricsTest, CongestionPenalty) {
  EXPECT_NEAR(CongestionPenalty({1.5, 0.5, 0.9}), 0.0125, 1e-12);
  EXPECT_EQ(CongestionPenalty({1.0, 1.0, 1.0}), 0.0);
}

RunRecord HandRecord() {
  RunRecord rec;
  for (int i = 0; i < 4; ++i) {
    RoundTrace r;
    r.spawned = 5;
    r.allocated = 5;
    r.completed = 5;
    r.demand = {100, 150, 250};
    r.prices = {0.0, 0.0, 0.0};
    r.welfare = 2.0 + i;
    rec.rounds.push_back(r);
  }
  rec.latencies = {10, 20, 30, 40, 50};
  return rec;
}

TEST(MetricsTest, AllOnTime) {
  MetricSummary m = ComputeMetrics(HandRecord());
  EXPECT_EQ(m.drop_rate, 0.0);
  EXPECT_EQ(m.deadline_satisfaction, 1.0);
  EXPECT_EQ(m.coverage, 1.0);
  EXPECT_NEAR(m.utilization, 0.5, 1e-12);
  EXPECT_NEAR(m.welfare, 3.5, 1e-12);
  EXPECT_NEAR(m.median_latency_ms, 30.0, 1e-12);
  EXPECT_NEAR(m.p95_latency_ms, 48.0, 1e-12);
  EXPECT_EQ(m.price_volatility, 0.0);
}

TEST(MetricsTest, DropsAndCoverage) {
  RunRecord rec = HandRecord();
  rec.rounds[0].allocated = 3;
  rec.rounds[0].completed = 2;
  rec.rounds[0].missed = 1;
  MetricSummary m = ComputeMetrics(rec);
  EXPECT_NEAR(m.drop_rate, 3.0 / 20.0, 1e-12);
  EXPECT_NEAR(m.coverage, 18.0 / 20.0, 1e-12);
  EXPECT_NEAR(m.drop_rate + m.deadline_satisfaction, 1.0, 1e-12);
  EXPECT_THROW(ComputeMetrics(RunRecord{}), std::invalid_argument);
}

TEST(CalibrationTest, ShippedFileMatchesBuiltin) {
  Calibration file = LoadCalibration(SVCMARKET_DEFAULT_CALIBRATION);
  Calibration builtin = DefaultCalibration();
  EXPECT_EQ(file.version, builtin.version);
  EXPECT_EQ(file.tokens, builtin.tokens);
  EXPECT_EQ(file.tier_sequence, builtin.tier_sequence);
  EXPECT_EQ(file.spillover_fraction, builtin.spillover_fraction);
}

TEST(CalibrationTest, BaseLatencies) {
  Calibration cal = DefaultCalibration();
  EXPECT_EQ(CriticalBaseMs(cal, TopologyKind::kLinear), 120.0);
  EXPECT_EQ(CriticalBaseMs(cal, TopologyKind::kTree), 130.0);
  EXPECT_EQ(CriticalBaseMs(cal, TopologyKind::kSeriesParallel), 140.0);
  EXPECT_EQ(CriticalBaseMs(cal, TopologyKind::kEntangled), 140.0);
}

TEST(CalibrationTest, BadFilesAreRejected) {
  EXPECT_THROW(LoadCalibration("/nonexistent/x.cal"), std::runtime_error);
  std::string path = ::testing::TempDir() + "bad.cal";
  {
    std::ofstream out(path);
    out << "mystery = 3\n";
  }
  EXPECT_THROW(LoadCalibration(path), std::runtime_error);
  {
    std::ofstream out(path);
    out << "# comment only\nspillover_fraction = 0.5\n";
  }
  EXPECT_EQ(LoadCalibration(path).spillover_fraction, 0.5);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace svcmarket
