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

#include "svcmarket/experiments.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "svcmarket/stats.h"

namespace svcmarket {

const std::array<const char*, kNumMetrics> kMetricNames = {
    "median_latency_ms", "p95_latency_ms", "drop_rate",
    "deadline_satisfaction", "utilization", "coverage",
    "welfare", "price_volatility"};

std::array<double, kNumMetrics> MetricValues(const MetricSummary& m) {
  return {m.median_latency_ms, m.p95_latency_ms, m.drop_rate,
          m.deadline_satisfaction, m.utilization, m.coverage,
          m.welfare, m.price_volatility};
}

namespace {

std::string Num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string LoadText(double load) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", load);
  return buf;
}

// Condition columns shared by both CSVs.
std::string ConditionCells(int experiment, const SimConfig& c) {
  return std::to_string(experiment) + "," + TopologyName(c.topology) + "," +
         LoadText(c.load) + "," + std::to_string(c.n_agents) + "," +
         GovernanceName(c.governance) + "," + ArchitectureName(c.architecture) +
         "," + MechanismName(c.mechanism);
}

const char* kConditionHeader =
    "experiment,topology,load,n_agents,governance,architecture,mechanism";

SimConfig Base(TopologyKind kind, double load, int n) {
  SimConfig c;
  c.topology = kind;
  c.load = load;
  c.n_agents = n;
  return c;
}

constexpr TopologyKind kLinear = TopologyKind::kLinear;
constexpr TopologyKind kTree = TopologyKind::kTree;
constexpr TopologyKind kSp = TopologyKind::kSeriesParallel;
constexpr TopologyKind kEnt = TopologyKind::kEntangled;

std::vector<SimConfig> Conditions(int experiment) {
  std::vector<SimConfig> out;
  switch (experiment) {
    case 1:
      for (auto k : {kLinear, kTree, kSp, kEnt}) {
        for (double load : {0.5, 1.0, 1.5}) out.push_back(Base(k, load, 50));
      }
      break;
    case 2:
      for (auto k : {kTree, kSp, kEnt}) {
        for (int n : {10, 20, 30, 40, 50, 60}) out.push_back(Base(k, 1.0, n));
      }
      break;
    case 3:
      for (auto g : {Governance::kNone, Governance::kModerate, Governance::kStrict}) {
        for (auto k : {kTree, kEnt}) {
          for (double load : {1.0, 1.5}) {
            SimConfig c = Base(k, load, 50);
            c.governance = g;
            out.push_back(c);
          }
        }
      }
      break;
    case 4:
      for (auto a : {Architecture::kNaive, Architecture::kHybridEmaOnly,
                     Architecture::kHybridFull}) {
        for (auto k : {kSp, kEnt}) {
          for (double load : {1.0, 1.5}) {
            for (int n : {20, 40, 60, 80}) {
              SimConfig c = Base(k, load, n);
              c.architecture = a;
              out.push_back(c);
            }
          }
        }
      }
      break;
    case 5:
      for (auto a : {Architecture::kNaive, Architecture::kHybridFull}) {
        for (auto g : {Governance::kNone, Governance::kStrict}) {
          for (auto k : {kTree, kSp, kEnt}) {
            for (double load : {1.0, 1.5}) {
              SimConfig c = Base(k, load, 50);
              c.architecture = a;
              c.governance = g;
              out.push_back(c);
            }
          }
        }
      }
      break;
    case 6:
      for (auto m : {MechanismType::kRandom, MechanismType::kEdf,
                     MechanismType::kValueGreedy, MechanismType::kMarket}) {
        for (auto k : {kTree, kSp, kEnt}) {
          for (double load : {1.0, 1.5}) {
            for (auto a : {Architecture::kNaive, Architecture::kHybridFull}) {
              SimConfig c = Base(k, load, 50);
              c.mechanism = m;
              c.architecture = a;
              out.push_back(c);
            }
          }
        }
      }
      break;
    default:
      throw std::invalid_argument("unknown experiment id " + std::to_string(experiment));
  }
  return out;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double ParseDouble(const std::string& s) {
  size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("bad number: " + s);
  return v;
}

}  // namespace

std::string ConditionKey(int experiment, const SimConfig& c) {
  return ConditionCells(experiment, c);
}

uint64_t StableHash(const std::string& s) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

uint64_t DeriveSeed(int experiment, const SimConfig& config, int replicate) {
  uint64_t h = StableHash(ConditionKey(experiment, config));
  return h ^ (0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(replicate + 1));
}

std::vector<GridPoint> ExpandGrid(int experiment, int seeds) {
  if (seeds < 1) throw std::invalid_argument("need at least one seed");
  std::vector<GridPoint> points;
  for (const SimConfig& c : Conditions(experiment)) {
    for (int s = 0; s < seeds; ++s) {
      GridPoint p;
      p.experiment = experiment;
      p.replicate = s;
      p.config = c;
      p.config.seed = DeriveSeed(experiment, c, s);
      points.push_back(p);
    }
  }
  return points;
}

std::vector<RunResult> RunGrid(const std::vector<GridPoint>& points, int jobs,
                               const Calibration& cal) {
  if (points.empty()) throw std::invalid_argument("empty grid");
  std::vector<RunResult> out(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < points.size(); i = next++) {
      try {
        out[i].point = points[i];
        out[i].summary = RunSimulation(points[i].config, cal).summary;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int n = std::max(1, std::min<int>(jobs, static_cast<int>(points.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (size_t i = 0; i < points.size(); ++i) {
    if (!errors[i]) continue;
    std::string what = "unknown error";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw std::runtime_error("run failed [" +
                             ConditionKey(points[i].experiment, points[i].config) +
                             ", seed " + std::to_string(points[i].replicate) +
                             "]: " + what);
  }
  return out;
}

std::vector<ConditionSummary> Aggregate(const std::vector<RunResult>& results,
                                        int resamples) {
  std::map<std::string, std::vector<const RunResult*>> groups;
  for (const auto& r : results) {
    groups[ConditionKey(r.point.experiment, r.point.config)].push_back(&r);
  }
  std::vector<ConditionSummary> out;
  for (auto& [key, group] : groups) {
    if (group.size() < 2) {
      throw std::invalid_argument("condition " + key + " has fewer than 2 seeds");
    }
    // Fix the order so the bootstrap sees the same sample for any input order.
    std::sort(group.begin(), group.end(), [](const RunResult* a, const RunResult* b) {
      return a->point.replicate < b->point.replicate;
    });
    ConditionSummary s;
    s.experiment = group.front()->point.experiment;
    s.config = group.front()->point.config;
    s.config.seed = 0;
    s.n_seeds = static_cast<int>(group.size());
    for (int m = 0; m < kNumMetrics; ++m) {
      std::vector<double> x;
      for (const RunResult* r : group) x.push_back(MetricValues(r->summary)[m]);
      MetricStat& st = s.metrics[m];
      st.mean = Mean(x);
      if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) {
        st.mean = st.ci_lo = st.ci_hi = x[0];
        continue;
      }
      std::mt19937_64 rng(StableHash(key) + static_cast<uint64_t>(m));
      Interval ci = BcaCi(x, Mean, resamples, 0.05, rng);
      st.ci_lo = std::min(ci.lo, st.mean);
      st.ci_hi = std::max(ci.hi, st.mean);
    }
    out.push_back(s);
  }
  return out;
}

std::string RawCsvHeader() {
  std::string h = std::string(kConditionHeader) + ",seed";
  for (const char* m : kMetricNames) h += std::string(",") + m;
  return h;
}

std::string AggregateCsvHeader() {
  std::string h = kConditionHeader;
  for (const char* m : kMetricNames) {
    h += std::string(",") + m + "_mean," + m + "_ci_lo," + m + "_ci_hi";
  }
  return h;
}

namespace {

void WriteLines(const std::string& path, const std::string& header,
                const std::vector<std::string>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << header << '\n';
  for (const auto& r : rows) out << r << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void WriteRawCsv(const std::string& path, const std::vector<RunResult>& results) {
  std::vector<std::string> rows;
  for (const auto& r : results) {
    std::string row = ConditionCells(r.point.experiment, r.point.config) + "," +
                      std::to_string(r.point.replicate);
    for (double v : MetricValues(r.summary)) row += "," + Num(v);
    rows.push_back(row);
  }
  WriteLines(path, RawCsvHeader(), rows);
}

void WriteAggregateCsv(const std::string& path,
                       const std::vector<ConditionSummary>& summaries) {
  std::vector<std::string> rows;
  for (const auto& s : summaries) {
    std::string row = ConditionCells(s.experiment, s.config);
    for (const auto& m : s.metrics) {
      row += "," + Num(m.mean) + "," + Num(m.ci_lo) + "," + Num(m.ci_hi);
    }
    rows.push_back(row);
  }
  WriteLines(path, AggregateCsvHeader(), rows);
}

std::vector<RunResult> ReadRawCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line != RawCsvHeader()) {
    throw std::runtime_error(path + ": unexpected header");
  }
  std::vector<RunResult> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = SplitCsv(line);
    if (cells.size() != 8 + kNumMetrics) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": wrong column count");
    }
    try {
      RunResult r;
      r.point.experiment = std::stoi(cells[0]);
      SimConfig& c = r.point.config;
      c.topology = ParseTopology(cells[1]);
      c.load = ParseDouble(cells[2]);
      c.n_agents = std::stoi(cells[3]);
      c.governance = ParseGovernance(cells[4]);
      c.architecture = ParseArchitecture(cells[5]);
      c.mechanism = ParseMechanism(cells[6]);
      r.point.replicate = std::stoi(cells[7]);
      c.seed = DeriveSeed(r.point.experiment, c, r.point.replicate);
      std::array<double, kNumMetrics> v{};
      for (int m = 0; m < kNumMetrics; ++m) v[m] = ParseDouble(cells[8 + m]);
      MetricSummary& s = r.summary;
      s.median_latency_ms = v[0];
      s.p95_latency_ms = v[1];
      s.drop_rate = v[2];
      s.deadline_satisfaction = v[3];
      s.utilization = v[4];
      s.coverage = v[5];
      s.welfare = v[6];
      s.price_volatility = v[7];
      out.push_back(r);
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace svcmarket
