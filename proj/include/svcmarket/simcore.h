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

// Round-based device/edge/cloud market simulator.

#ifndef SVCMARKET_SIMCORE_H_
#define SVCMARKET_SIMCORE_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "svcmarket/graph.h"

namespace svcmarket {

constexpr int kNumTiers = 3;
using TierVector = std::array<double, kNumTiers>;

constexpr TierVector kTierCapacity = {200.0, 300.0, 500.0};
constexpr TierVector kTierBaseMs = {5.0, 15.0, 50.0};
constexpr double kPriceCap = 1000.0;
constexpr double kTatonnementStep = 0.25;
constexpr int kTatonnementIterations = 15;
constexpr double kLatencyDecay = 0.005;
constexpr double kCongestionPenalty = 0.05;

enum class Governance { kNone, kModerate, kStrict };
enum class Architecture { kNaive, kHybridEmaOnly, kHybridFull };
enum class MechanismType { kRandom, kEdf, kValueGreedy, kMarket };

std::string GovernanceName(Governance g);
std::string ArchitectureName(Architecture a);
std::string MechanismName(MechanismType m);
Governance ParseGovernance(const std::string& s);
Architecture ParseArchitecture(const std::string& s);
MechanismType ParseMechanism(const std::string& s);

// Model constants not pinned by theory. Loaded from a flat key = value file.
struct Calibration {
  std::string version = "1";
  std::map<TopologyKind, TierVector> tokens;
  std::map<TopologyKind, std::vector<Tier>> tier_sequence;
  // Fraction of device overload pushed onto the edge tier next round
  // (entangled only).
  double spillover_fraction = 0.35;
};

Calibration DefaultCalibration();
// Throws std::runtime_error on unreadable files or malformed entries.
Calibration LoadCalibration(const std::string& path);
// Base latency along the topology's critical tier sequence.
double CriticalBaseMs(const Calibration& cal, TopologyKind kind);

struct TaskInstance {
  int id = 0;
  int agent = 0;
  double value = 1.0;
  int deadline_ms = 100;
  double sensitivity = kLatencyDecay;
  int arrival_round = 0;
  TierVector tokens{};
};

// Throws std::invalid_argument when lambda <= 0 or n_agents < 1.
std::vector<TaskInstance> SpawnTasks(std::mt19937_64& rng, double lambda,
                                     int n_agents, const TierVector& tokens,
                                     int round, int first_id);

double BidLatency(double base_ms, double rho);
double ExecLatency(double base_ms, double rho_raw, double lambda_load);
double RealizeLatency(std::mt19937_64& rng, double critical_ms);
double TaskValue(double value, double latency_ms, double deadline_ms);

// 15 iterations of the relative-excess price update. `demand` returns the
// per-tier token demand at the given prices.
TierVector TatonnementRound(
    const TierVector& prices, const TierVector& capacity,
    const std::function<TierVector(const TierVector&)>& demand);

class SuccessModel {
 public:
  double Predict(double rho_hat) const;
  void Update(double rho_hat, bool success);
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double a_ = 2.0;
  double b_ = -2.0;
  double rate_ = 0.3;
};

double TrustUpdate(double trust, bool sla_met);

// Capacity pools for one governance policy. Every task sees exactly one
// pool.
struct GovernanceView {
  std::vector<double> fractions;
  // Pool index for a task, given its agent's trust.
  int PoolFor(const TaskInstance& task, double trust) const;
  Governance kind = Governance::kNone;
};

GovernanceView MakeGovernance(Governance g);

struct IntegratorState {
  TierVector ema{};
  double markup = 0.10;
  double slice_step = 0.15;
  double efficiency = 1.0;
  // Advances the EMA with this round's tier prices.
  void Observe(const TierVector& tier_prices);
  // Posted per-tier prices (EMA plus markup).
  TierVector Posted() const;
  // Slice price for a token bundle, nudged by the relative excess demand.
  double SlicePrice(const TierVector& tokens, double excess) const;
  TierVector Effective(const TierVector& raw) const;
};

double EfficiencyFor(Architecture arch, TopologyKind kind);

// One task as seen by an allocation rule.
struct Candidate {
  const TaskInstance* task = nullptr;
  TierVector tokens{};  // effective tokens
  int pool = 0;
  double score = 0.0;    // p_success * E[V]
  double cost = 0.0;     // price of the bundle (Market only)
};

// Admitted candidate indices. `remaining` is per pool and tier and is
// consumed in place.
std::vector<int> Allocate(MechanismType mechanism,
                          const std::vector<Candidate>& candidates,
                          std::vector<TierVector>& remaining,
                          std::mt19937_64& rng);

struct SimConfig {
  TopologyKind topology = TopologyKind::kTree;
  double load = 1.0;
  int n_agents = 50;
  Governance governance = Governance::kNone;
  Architecture architecture = Architecture::kNaive;
  MechanismType mechanism = MechanismType::kMarket;
  int rounds = 200;
  uint64_t seed = 0;
};

// Throws std::invalid_argument when a field is out of its domain.
void ValidateConfig(const SimConfig& config);

struct RoundTrace {
  int spawned = 0;
  int allocated = 0;
  int completed = 0;
  int missed = 0;  // allocated but late
  TierVector demand{};
  std::vector<double> prices;  // one entry per (pool, tier) series
  double welfare = 0.0;
};

struct MetricSummary {
  double median_latency_ms = 0.0;
  double p95_latency_ms = 0.0;
  double drop_rate = 0.0;
  double deadline_satisfaction = 0.0;
  double utilization = 0.0;
  double coverage = 0.0;
  double welfare = 0.0;
  double price_volatility = 0.0;
};

struct RunRecord {
  SimConfig config;
  std::vector<RoundTrace> rounds;
  std::vector<double> latencies;  // executed tasks, in execution order
  MetricSummary summary;
};

RunRecord RunSimulation(const SimConfig& config, const Calibration& cal);

// Mean over series of the std of log((p_t + 1) / (p_{t-1} + 1)).
double PriceVolatility(const std::vector<std::vector<double>>& series);
// Throws std::invalid_argument on an empty record.
MetricSummary ComputeMetrics(const RunRecord& record);
double CongestionPenalty(const TierVector& rho);

}  // namespace svcmarket

#endif  // SVCMARKET_SIMCORE_H_
