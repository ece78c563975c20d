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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace svcmarket {
namespace {

uint64_t SplitMix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string Trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Tier ParseTier(const std::string& s) {
  if (s == "device") return Tier::kDevice;
  if (s == "edge") return Tier::kEdge;
  if (s == "cloud") return Tier::kCloud;
  throw std::runtime_error("unknown tier: " + s);
}

constexpr double kTrustThreshold = 0.75;
constexpr double kTrustInit = 0.8;

}  // namespace

std::string GovernanceName(Governance g) {
  switch (g) {
    case Governance::kNone:
      return "none";
    case Governance::kModerate:
      return "moderate";
    case Governance::kStrict:
      return "strict";
  }
  return "?";
}

std::string ArchitectureName(Architecture a) {
  switch (a) {
    case Architecture::kNaive:
      return "naive";
    case Architecture::kHybridEmaOnly:
      return "hybrid_ema";
    case Architecture::kHybridFull:
      return "hybrid";
  }
  return "?";
}

std::string MechanismName(MechanismType m) {
  switch (m) {
    case MechanismType::kRandom:
      return "random";
    case MechanismType::kEdf:
      return "edf";
    case MechanismType::kValueGreedy:
      return "value_greedy";
    case MechanismType::kMarket:
      return "market";
  }
  return "?";
}

Governance ParseGovernance(const std::string& s) {
  for (auto g : {Governance::kNone, Governance::kModerate, Governance::kStrict}) {
    if (GovernanceName(g) == s) return g;
  }
  throw std::invalid_argument("unknown governance: " + s);
}

Architecture ParseArchitecture(const std::string& s) {
  for (auto a : {Architecture::kNaive, Architecture::kHybridEmaOnly,
                 Architecture::kHybridFull}) {
    if (ArchitectureName(a) == s) return a;
  }
  throw std::invalid_argument("unknown architecture: " + s);
}

MechanismType ParseMechanism(const std::string& s) {
  for (auto m : {MechanismType::kRandom, MechanismType::kEdf,
                 MechanismType::kValueGreedy, MechanismType::kMarket}) {
    if (MechanismName(m) == s) return m;
  }
  throw std::invalid_argument("unknown mechanism: " + s);
}

Calibration DefaultCalibration() {
  Calibration cal;
  cal.tokens[TopologyKind::kLinear] = {2, 2, 2};
  cal.tokens[TopologyKind::kTree] = {1, 2, 4};
  cal.tokens[TopologyKind::kSeriesParallel] = {2, 3, 6};
  cal.tokens[TopologyKind::kEntangled] = {5, 4, 5};
  for (auto kind : {TopologyKind::kLinear, TopologyKind::kTree,
                    TopologyKind::kSeriesParallel, TopologyKind::kEntangled}) {
    cal.tier_sequence[kind] = CriticalTierSequence(kind);
  }
  return cal;
}

Calibration LoadCalibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read calibration file: " + path);
  Calibration cal = DefaultCalibration();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = Trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected key = value");
    }
    std::string key = Trim(line.substr(0, eq));
    std::istringstream value(Trim(line.substr(eq + 1)));
    auto fail = [&]() {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": bad value for " + key);
    };
    if (key == "version") {
      value >> cal.version;
    } else if (key == "spillover_fraction") {
      if (!(value >> cal.spillover_fraction) || cal.spillover_fraction < 0) {
        fail();
      }
    } else if (key.rfind("tokens.", 0) == 0) {
      TierVector t{};
      for (double& x : t) {
        if (!(value >> x) || x < 0) fail();
      }
      cal.tokens[ParseTopology(key.substr(7))] = t;
    } else if (key.rfind("sequence.", 0) == 0) {
      std::vector<Tier> seq;
      std::string name;
      while (value >> name) seq.push_back(ParseTier(name));
      if (seq.empty()) fail();
      cal.tier_sequence[ParseTopology(key.substr(9))] = seq;
    } else {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": unknown key " + key);
    }
  }
  return cal;
}

double CriticalBaseMs(const Calibration& cal, TopologyKind kind) {
  double total = 0.0;
  for (Tier t : cal.tier_sequence.at(kind)) {
    total += kTierBaseMs[static_cast<int>(t)];
  }
  return total;
}

std::vector<TaskInstance> SpawnTasks(std::mt19937_64& rng, double lambda,
                                     int n_agents, const TierVector& tokens,
                                     int round, int first_id) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (n_agents < 1) throw std::invalid_argument("need at least one agent");
  static constexpr int kDeadlines[] = {100, 150, 200};
  std::poisson_distribution<int> count(lambda);
  std::uniform_real_distribution<double> value(1.0, 2.0);
  std::uniform_int_distribution<int> deadline(0, 2);
  std::vector<TaskInstance> tasks;
  int id = first_id;
  for (int a = 0; a < n_agents; ++a) {
    int k = count(rng);
    for (int j = 0; j < k; ++j) {
      TaskInstance t;
      t.id = id++;
      t.agent = a;
      t.value = value(rng);
      t.deadline_ms = kDeadlines[deadline(rng)];
      t.arrival_round = round;
      t.tokens = tokens;
      tasks.push_back(t);
    }
  }
  return tasks;
}

double BidLatency(double base_ms, double rho) {
  if (rho < 0.0) throw std::invalid_argument("negative utilization");
  return base_ms + 200.0 * std::pow(rho, 1.2);
}

double ExecLatency(double base_ms, double rho_raw, double lambda_load) {
  if (rho_raw < 0.0) throw std::invalid_argument("negative utilization");
  double rho = std::min(0.99, rho_raw);
  return base_ms + std::min(lambda_load * (rho / (1.0 - rho)) * 2.0, 500.0);
}

double RealizeLatency(std::mt19937_64& rng, double critical_ms) {
  if (!(critical_ms > 0.0)) throw std::invalid_argument("latency must be > 0");
  std::normal_distribution<double> noise(critical_ms, 0.1 * critical_ms);
  return std::max(0.0, noise(rng));
}

double TaskValue(double value, double latency_ms, double deadline_ms) {
  if (latency_ms > deadline_ms) return 0.0;
  return value * std::exp(-kLatencyDecay * latency_ms);
}

TierVector TatonnementRound(
    const TierVector& prices, const TierVector& capacity,
    const std::function<TierVector(const TierVector&)>& demand) {
  TierVector p = prices;
  for (int it = 0; it < kTatonnementIterations; ++it) {
    TierVector d = demand(p);
    for (int r = 0; r < kNumTiers; ++r) {
      if (d[r] < 0.0) throw std::invalid_argument("negative demand");
      if (capacity[r] <= 0.0) continue;
      double step = kTatonnementStep * (d[r] - capacity[r]) / capacity[r];
      p[r] = std::clamp(p[r] + step, 0.0, kPriceCap);
    }
  }
  return p;
}

double SuccessModel::Predict(double rho_hat) const {
  return 1.0 / (1.0 + std::exp(-(a_ + b_ * rho_hat)));
}

void SuccessModel::Update(double rho_hat, bool success) {
  if (rho_hat < 0.0) throw std::invalid_argument("negative utilization");
  double err = (success ? 1.0 : 0.0) - Predict(rho_hat);
  a_ += rate_ * err;
  b_ += rate_ * err * rho_hat;
}

double TrustUpdate(double trust, bool sla_met) {
  if (trust < 0.0 || trust > 1.0) throw std::invalid_argument("trust outside [0,1]");
  double next = std::clamp(trust + (sla_met ? 0.03 : -0.08), 0.0, 1.0);
  // Snap to a 1e-9 grid so repeated +/- steps cannot drift across the gate.
  return std::round(next * 1e9) / 1e9;
}

int GovernanceView::PoolFor(const TaskInstance& task, double trust) const {
  switch (kind) {
    case Governance::kNone:
      return 0;
    case Governance::kModerate:
      return task.deadline_ms <= 100 ? 0 : 1;
    case Governance::kStrict:
      return trust >= kTrustThreshold - 1e-12 ? 0 : 1;
  }
  return 0;
}

GovernanceView MakeGovernance(Governance g) {
  GovernanceView v;
  v.kind = g;
  switch (g) {
    case Governance::kNone:
      v.fractions = {1.0};
      break;
    case Governance::kModerate:
      v.fractions = {0.5, 0.5};
      break;
    case Governance::kStrict:
      v.fractions = {0.7, 0.3};
      break;
  }
  return v;
}

void IntegratorState::Observe(const TierVector& tier_prices) {
  for (int r = 0; r < kNumTiers; ++r) ema[r] = 0.8 * ema[r] + 0.2 * tier_prices[r];
}

TierVector IntegratorState::Posted() const {
  TierVector p{};
  for (int r = 0; r < kNumTiers; ++r) p[r] = (1.0 + markup) * ema[r];
  return p;
}

double IntegratorState::SlicePrice(const TierVector& tokens, double excess) const {
  TierVector posted = Posted();
  double base = 0.0;
  for (int r = 0; r < kNumTiers; ++r) base += posted[r] * tokens[r];
  return std::max(0.0, base * (1.0 + slice_step * excess));
}

TierVector IntegratorState::Effective(const TierVector& raw) const {
  TierVector e{};
  for (int r = 0; r < kNumTiers; ++r) e[r] = efficiency * raw[r];
  return e;
}

double EfficiencyFor(Architecture arch, TopologyKind kind) {
  if (arch != Architecture::kHybridFull) return 1.0;
  if (kind == TopologyKind::kSeriesParallel) return 0.75;
  if (kind == TopologyKind::kEntangled) return 0.85;
  return 1.0;
}

std::vector<int> Allocate(MechanismType mechanism,
                          const std::vector<Candidate>& candidates,
                          std::vector<TierVector>& remaining,
                          std::mt19937_64& rng) {
  std::vector<int> order;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    if (mechanism == MechanismType::kValueGreedy && !(c.score > 0.0)) continue;
    if (mechanism == MechanismType::kMarket && !(c.score - c.cost > 0.0)) continue;
    order.push_back(static_cast<int>(i));
  }
  auto id = [&](int i) { return candidates[i].task->id; };
  switch (mechanism) {
    case MechanismType::kRandom:
      std::shuffle(order.begin(), order.end(), rng);
      break;
    case MechanismType::kEdf:
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = candidates[a].task->deadline_ms;
        int db = candidates[b].task->deadline_ms;
        return da != db ? da < db : id(a) < id(b);
      });
      break;
    case MechanismType::kValueGreedy:
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        double sa = candidates[a].score;
        double sb = candidates[b].score;
        return sa != sb ? sa > sb : id(a) < id(b);
      });
      break;
    case MechanismType::kMarket:
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        double sa = candidates[a].score - candidates[a].cost;
        double sb = candidates[b].score - candidates[b].cost;
        return sa != sb ? sa > sb : id(a) < id(b);
      });
      break;
  }
  std::vector<int> admitted;
  for (int i : order) {
    const Candidate& c = candidates[i];
    TierVector& left = remaining.at(c.pool);
    bool fits = true;
    for (int r = 0; r < kNumTiers; ++r) fits &= c.tokens[r] <= left[r] + 1e-9;
    if (!fits) continue;
    for (int r = 0; r < kNumTiers; ++r) left[r] -= c.tokens[r];
    admitted.push_back(i);
  }
  std::sort(admitted.begin(), admitted.end());
  return admitted;
}

void ValidateConfig(const SimConfig& c) {
  if (c.topology == TopologyKind::kCustom) {
    throw std::invalid_argument("custom topology cannot be simulated");
  }
  if (!(c.load > 0.0)) throw std::invalid_argument("load must be positive");
  if (c.n_agents < 1) throw std::invalid_argument("n_agents must be >= 1");
  if (c.rounds < 2) throw std::invalid_argument("rounds must be >= 2");
}

double CongestionPenalty(const TierVector& rho) {
  double s = 0.0;
  for (double r : rho) {
    double over = std::max(0.0, r - 1.0);
    s += over * over;
  }
  return kCongestionPenalty * s;
}

RunRecord RunSimulation(const SimConfig& config, const Calibration& cal) {
  ValidateConfig(config);
  const TierVector tokens = cal.tokens.at(config.topology);
  const std::vector<Tier>& seq = cal.tier_sequence.at(config.topology);
  const GovernanceView gov = MakeGovernance(config.governance);
  const int pools = static_cast<int>(gov.fractions.size());
  const bool hybrid = config.architecture != Architecture::kNaive;
  const bool market = config.mechanism == MechanismType::kMarket;

  std::mt19937_64 spawn_rng(SplitMix(config.seed ^ 0x5350415755ULL));
  std::mt19937_64 order_rng(SplitMix(config.seed ^ 0x4f52444552ULL));
  std::mt19937_64 noise_rng(SplitMix(config.seed ^ 0x4e4f495345ULL));

  std::vector<TierVector> pool_cap(pools);
  for (int p = 0; p < pools; ++p) {
    for (int r = 0; r < kNumTiers; ++r) {
      pool_cap[p][r] = gov.fractions[p] * kTierCapacity[r];
    }
  }
  std::vector<TierVector> prices(pools, TierVector{});
  std::vector<IntegratorState> integrators(pools);
  for (auto& in : integrators) {
    in.efficiency = EfficiencyFor(config.architecture, config.topology);
  }
  const double efficiency = integrators[0].efficiency;
  TierVector background{};  // spillover tokens carried into this round
  std::vector<double> trust(config.n_agents, kTrustInit);
  SuccessModel model;

  RunRecord record;
  record.config = config;
  int next_id = 0;
  for (int round = 0; round < config.rounds; ++round) {
    std::vector<TaskInstance> tasks = SpawnTasks(
        spawn_rng, config.load, config.n_agents, tokens, round, next_id);
    next_id += static_cast<int>(tasks.size());
    RoundTrace trace;
    trace.spawned = static_cast<int>(tasks.size());

    TierVector offered = background;
    for (const auto& t : tasks) {
      for (int r = 0; r < kNumTiers; ++r) offered[r] += efficiency * t.tokens[r];
    }
    trace.demand = offered;

    // Bidding-time utilization: load already committed before allocation.
    TierVector rho_hat{};
    for (int r = 0; r < kNumTiers; ++r) rho_hat[r] = background[r] / kTierCapacity[r];
    double bid_ms = 0.0;
    double rho_crit = 0.0;
    for (Tier tier : seq) {
      int r = static_cast<int>(tier);
      bid_ms += BidLatency(kTierBaseMs[r], rho_hat[r]);
      rho_crit = std::max(rho_crit, rho_hat[r]);
    }
    const double p_success = model.Predict(rho_crit);

    std::vector<Candidate> cands(tasks.size());
    for (size_t i = 0; i < tasks.size(); ++i) {
      Candidate& c = cands[i];
      c.task = &tasks[i];
      c.pool = gov.PoolFor(tasks[i], trust[tasks[i].agent]);
      for (int r = 0; r < kNumTiers; ++r) c.tokens[r] = efficiency * tasks[i].tokens[r];
      c.score = p_success * TaskValue(tasks[i].value, bid_ms, tasks[i].deadline_ms);
    }

    std::vector<TierVector> remaining = pool_cap;
    for (int p = 0; p < pools; ++p) {
      for (int r = 0; r < kNumTiers; ++r) {
        remaining[p][r] = std::max(0.0, remaining[p][r] - background[r] * gov.fractions[p]);
      }
    }

    if (market) {
      for (int p = 0; p < pools; ++p) {
        auto demand_at = [&](const TierVector& price) {
          TierVector d{};
          for (const auto& c : cands) {
            if (c.pool != p) continue;
            double cost = 0.0;
            for (int r = 0; r < kNumTiers; ++r) cost += price[r] * c.tokens[r];
            if (c.score - cost > 0.0) {
              for (int r = 0; r < kNumTiers; ++r) d[r] += c.tokens[r];
            }
          }
          return d;
        };
        prices[p] = TatonnementRound(prices[p], remaining[p], demand_at);
        double excess = 0.0;
        if (hybrid) {
          integrators[p].Observe(prices[p]);
          TierVector d = demand_at(integrators[p].Posted());
          for (int r = 0; r < kNumTiers; ++r) {
            if (remaining[p][r] > 0.0) {
              excess = std::max(excess, (d[r] - remaining[p][r]) / remaining[p][r]);
            }
          }
        }
        for (auto& c : cands) {
          if (c.pool != p) continue;
          if (hybrid) {
            c.cost = integrators[p].SlicePrice(c.tokens, excess);
          } else {
            c.cost = 0.0;
            for (int r = 0; r < kNumTiers; ++r) c.cost += prices[p][r] * c.tokens[r];
          }
        }
      }
    }

    std::vector<TierVector> left = remaining;
    std::vector<int> admitted = Allocate(config.mechanism, cands, left, order_rng);
    trace.allocated = static_cast<int>(admitted.size());

    // Execution on the critical path at post-allocation utilization.
    std::vector<TierVector> load(pools, TierVector{});
    for (int p = 0; p < pools; ++p) {
      for (int r = 0; r < kNumTiers; ++r) {
        load[p][r] = background[r] * gov.fractions[p];
      }
    }
    for (int i : admitted) {
      for (int r = 0; r < kNumTiers; ++r) load[cands[i].pool][r] += cands[i].tokens[r];
    }
    double realized_value = 0.0;
    for (int i : admitted) {
      const Candidate& c = cands[i];
      double crit = 0.0;
      for (Tier tier : seq) {
        int r = static_cast<int>(tier);
        crit += ExecLatency(kTierBaseMs[r], load[c.pool][r] / pool_cap[c.pool][r],
                            config.load);
      }
      double latency = RealizeLatency(noise_rng, crit);
      record.latencies.push_back(latency);
      bool met = latency <= c.task->deadline_ms;
      if (met) {
        ++trace.completed;
        realized_value += TaskValue(c.task->value, latency, c.task->deadline_ms);
      } else {
        ++trace.missed;
      }
      model.Update(rho_crit, met);
      double& tr = trust[c.task->agent];
      tr = TrustUpdate(tr, met);
    }

    TierVector rho{};
    for (int r = 0; r < kNumTiers; ++r) rho[r] = offered[r] / kTierCapacity[r];
    trace.welfare = realized_value - CongestionPenalty(rho);

    for (int p = 0; p < pools; ++p) {
      TierVector shown = hybrid ? integrators[p].Posted() : prices[p];
      for (int r = 0; r < kNumTiers; ++r) {
        if (shown[r] < 0.0 || shown[r] > kPriceCap) {
          throw std::logic_error("price left [0, cap]");
        }
        trace.prices.push_back(shown[r]);
      }
    }

    TierVector next{};
    if (config.topology == TopologyKind::kEntangled) {
      const int dev = static_cast<int>(Tier::kDevice);
      const int edge = static_cast<int>(Tier::kEdge);
      double over = offered[dev] - background[dev] - kTierCapacity[dev];
      if (over > 0.0) next[edge] = cal.spillover_fraction * over;
    }
    background = next;
    record.rounds.push_back(std::move(trace));
  }
  record.summary = ComputeMetrics(record);
  return record;
}

double PriceVolatility(const std::vector<std::vector<double>>& series) {
  if (series.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : series) {
    if (s.size() < 2) continue;
    std::vector<double> returns;
    for (size_t t = 1; t < s.size(); ++t) {
      returns.push_back(std::log((s[t] + 1.0) / (s[t - 1] + 1.0)));
    }
    double mean = std::accumulate(returns.begin(), returns.end(), 0.0) /
                  static_cast<double>(returns.size());
    double ss = 0.0;
    for (double x : returns) ss += (x - mean) * (x - mean);
    total += std::sqrt(ss / static_cast<double>(returns.size()));
  }
  return total / static_cast<double>(series.size());
}

MetricSummary ComputeMetrics(const RunRecord& record) {
  if (record.rounds.empty()) throw std::invalid_argument("empty run record");
  MetricSummary m;
  std::vector<double> lat = record.latencies;
  std::sort(lat.begin(), lat.end());
  auto quantile = [&](double q) {
    if (lat.empty()) return 0.0;
    double pos = q * static_cast<double>(lat.size() - 1);
    size_t lo = static_cast<size_t>(std::floor(pos));
    size_t hi = std::min(lo + 1, lat.size() - 1);
    return lat[lo] + (pos - static_cast<double>(lo)) * (lat[hi] - lat[lo]);
  };
  m.median_latency_ms = quantile(0.5);
  m.p95_latency_ms = quantile(0.95);
  double spawned = 0.0;
  double completed = 0.0;
  double allocated = 0.0;
  double util = 0.0;
  double welfare = 0.0;
  const double total_cap =
      std::accumulate(kTierCapacity.begin(), kTierCapacity.end(), 0.0);
  size_t n_series = record.rounds.front().prices.size();
  std::vector<std::vector<double>> series(n_series);
  for (const auto& r : record.rounds) {
    spawned += r.spawned;
    completed += r.completed;
    allocated += r.allocated;
    util += std::accumulate(r.demand.begin(), r.demand.end(), 0.0) / total_cap;
    welfare += r.welfare;
    for (size_t s = 0; s < n_series && s < r.prices.size(); ++s) {
      series[s].push_back(r.prices[s]);
    }
  }
  const double rounds = static_cast<double>(record.rounds.size());
  m.drop_rate = spawned > 0 ? 1.0 - completed / spawned : 0.0;
  m.deadline_satisfaction = 1.0 - m.drop_rate;
  m.coverage = spawned > 0 ? allocated / spawned : 0.0;
  m.utilization = util / rounds;
  m.welfare = welfare / rounds;
  m.price_volatility = PriceVolatility(series);
  return m;
}

}  // namespace svcmarket
