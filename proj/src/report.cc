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

#include "svcmarket/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace svcmarket {
namespace {

constexpr int kWelfare = 6;

std::string Fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string LoadName(double load) {
  if (load == 0.5) return "low";
  if (load == 1.0) return "medium";
  if (load == 1.5) return "high";
  return Fmt(load);
}

using Selector = std::function<bool(const SimConfig&)>;
using Level = std::function<std::string(const SimConfig&)>;

// One factor compared within a scope: KW across levels, then pairwise
// rank-sum tests with Holm adjustment and Cliff's delta, for every metric.
void FactorFamily(int experiment, const std::vector<RunResult>& rs,
                  const std::string& scope, const Selector& in_scope,
                  const std::string& factor, const Level& level,
                  std::vector<ReportRow>& out) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const RunResult*>> groups;
  for (const auto& r : rs) {
    if (r.point.experiment != experiment || !in_scope(r.point.config)) continue;
    std::string l = level(r.point.config);
    if (!groups.count(l)) order.push_back(l);
    groups[l].push_back(&r);
  }
  if (groups.size() < 2) return;
  for (const auto& [l, g] : groups) {
    if (g.size() < 2) return;
  }
  for (int m = 0; m < kNumMetrics; ++m) {
    auto sample = [&](const std::string& l) {
      std::vector<double> x;
      for (const RunResult* r : groups[l]) x.push_back(MetricValues(r->summary)[m]);
      return x;
    };
    std::vector<std::vector<double>> all;
    for (const auto& l : order) all.push_back(sample(l));
    TestResult kw = KruskalWallis(all);
    ReportRow row;
    row.experiment = experiment;
    row.scope = scope;
    row.metric = kMetricNames[m];
    row.test = "kruskal_wallis";
    row.comparison = factor;
    row.statistic = kw.statistic;
    row.p_value = kw.p_value;
    out.push_back(row);

    std::vector<ReportRow> pairs;
    for (size_t i = 0; i < order.size(); ++i) {
      for (size_t j = i + 1; j < order.size(); ++j) {
        auto a = sample(order[i]);
        auto b = sample(order[j]);
        TestResult w = WilcoxonRankSum(a, b);
        TestResult d = CliffsDelta(a, b);
        ReportRow p = row;
        p.test = "wilcoxon";
        p.comparison = order[i] + " vs " + order[j];
        p.statistic = w.statistic;
        p.p_value = w.p_value;
        p.effect = d.effect;
        p.label = d.magnitude.value_or("");
        pairs.push_back(p);
      }
    }
    std::vector<double> ps;
    for (const auto& p : pairs) ps.push_back(p.p_value);
    std::vector<double> adj = HolmAdjust(ps);
    for (size_t k = 0; k < pairs.size(); ++k) {
      pairs[k].p_holm = adj[k];
      out.push_back(pairs[k]);
    }
  }
}

Selector All() {
  return [](const SimConfig&) { return true; };
}

}  // namespace

std::vector<double> ConditionSample(const std::vector<RunResult>& results,
                                    const SimConfig& config, int metric) {
  std::vector<std::pair<int, double>> tagged;
  for (const auto& r : results) {
    const SimConfig& c = r.point.config;
    if (c.topology == config.topology && c.load == config.load &&
        c.n_agents == config.n_agents && c.governance == config.governance &&
        c.architecture == config.architecture && c.mechanism == config.mechanism) {
      tagged.emplace_back(r.point.replicate, MetricValues(r.summary).at(metric));
    }
  }
  std::sort(tagged.begin(), tagged.end());
  std::vector<double> x;
  for (const auto& t : tagged) x.push_back(t.second);
  return x;
}

SynergyResult WelfareSynergy(const std::vector<RunResult>& results,
                             TopologyKind topology, double load, int resamples) {
  auto cell = [&](Architecture a, Governance g) {
    SimConfig c;
    c.topology = topology;
    c.load = load;
    c.architecture = a;
    c.governance = g;
    std::vector<RunResult> exp5;
    for (const auto& r : results) {
      if (r.point.experiment == 5) exp5.push_back(r);
    }
    return ConditionSample(exp5, c, kWelfare);
  };
  std::mt19937_64 rng(StableHash("synergy|" + TopologyName(topology) + "|" + Fmt(load)));
  return Synergy(cell(Architecture::kNaive, Governance::kNone),
                 cell(Architecture::kHybridFull, Governance::kNone),
                 cell(Architecture::kNaive, Governance::kStrict),
                 cell(Architecture::kHybridFull, Governance::kStrict), resamples, rng);
}

std::vector<ReportRow> AnalyzeExperiment(int experiment,
                                         const std::vector<RunResult>& rs) {
  bool any = false;
  for (const auto& r : rs) any |= r.point.experiment == experiment;
  if (!any) {
    throw std::invalid_argument("no runs for experiment " + std::to_string(experiment));
  }
  std::vector<ReportRow> out;
  auto topo = [](const SimConfig& c) { return TopologyName(c.topology); };
  auto gov = [](const SimConfig& c) { return GovernanceName(c.governance); };
  auto arch = [](const SimConfig& c) { return ArchitectureName(c.architecture); };
  auto mech = [](const SimConfig& c) { return MechanismName(c.mechanism); };
  const std::vector<TopologyKind> kinds = {
      TopologyKind::kLinear, TopologyKind::kTree, TopologyKind::kSeriesParallel,
      TopologyKind::kEntangled};

  switch (experiment) {
    case 1:
      FactorFamily(1, rs, "all loads", All(), "topology", topo, out);
      for (double load : {0.5, 1.0, 1.5}) {
        FactorFamily(1, rs, "load=" + LoadName(load),
                     [=](const SimConfig& c) { return c.load == load; }, "topology", topo, out);
      }
      for (auto k : kinds) {
        FactorFamily(1, rs, "topology=" + TopologyName(k),
                     [=](const SimConfig& c) { return c.topology == k; }, "load",
                     [](const SimConfig& c) { return LoadName(c.load); }, out);
      }
      break;
    case 2:
      for (auto k : kinds) {
        std::vector<double> n;
        std::vector<std::array<double, kNumMetrics>> v;
        for (const auto& r : rs) {
          if (r.point.experiment != 2 || r.point.config.topology != k) continue;
          n.push_back(r.point.config.n_agents);
          v.push_back(MetricValues(r.summary));
        }
        if (n.size() < 3) continue;
        for (int m = 0; m < kNumMetrics; ++m) {
          std::vector<double> y;
          for (const auto& a : v) y.push_back(a[m]);
          TestResult s = Spearman(n, y);
          ReportRow row;
          row.experiment = 2;
          row.scope = "topology=" + TopologyName(k);
          row.metric = kMetricNames[m];
          row.test = "spearman";
          row.comparison = "n_agents";
          row.statistic = s.statistic;
          row.p_value = s.p_value;
          out.push_back(row);
        }
        FactorFamily(2, rs, "topology=" + TopologyName(k),
                     [=](const SimConfig& c) { return c.topology == k; }, "n_agents",
                     [](const SimConfig& c) { return std::to_string(c.n_agents); }, out);
      }
      break;
    case 3:
      for (auto k : kinds) {
        for (double load : {1.0, 1.5}) {
          FactorFamily(3, rs, "topology=" + TopologyName(k) + ";load=" + LoadName(load),
                       [=](const SimConfig& c) { return c.topology == k && c.load == load; },
                       "governance", gov, out);
        }
      }
      break;
    case 4:
      for (auto k : kinds) {
        for (double load : {1.0, 1.5}) {
          for (int n : {20, 40, 60, 80}) {
            FactorFamily(4, rs,
                         "topology=" + TopologyName(k) + ";load=" + LoadName(load) +
                             ";n_agents=" + std::to_string(n),
                         [=](const SimConfig& c) {
                           return c.topology == k && c.load == load && c.n_agents == n;
                         },
                         "architecture", arch, out);
          }
        }
      }
      break;
    case 5:
      for (auto k : kinds) {
        for (double load : {1.0, 1.5}) {
          SimConfig probe;
          probe.topology = k;
          probe.load = load;
          std::vector<RunResult> exp5;
          for (const auto& r : rs) {
            if (r.point.experiment == 5) exp5.push_back(r);
          }
          if (ConditionSample(exp5, probe, kWelfare).size() < 2) continue;
          SynergyResult s = WelfareSynergy(rs, k, load);
          ReportRow row;
          row.experiment = 5;
          row.scope = "topology=" + TopologyName(k) + ";load=" + LoadName(load);
          row.metric = "welfare";
          row.test = "synergy";
          row.comparison = "architecture x governance";
          row.statistic = s.delta;
          row.p_value = std::nan("");
          row.effect = s.delta;
          row.label = s.label;
          row.ci_lo = s.ci.lo;
          row.ci_hi = s.ci.hi;
          out.push_back(row);
        }
      }
      break;
    case 6:
      for (auto k : kinds) {
        for (double load : {1.0, 1.5}) {
          for (auto a : {Architecture::kNaive, Architecture::kHybridFull}) {
            FactorFamily(6, rs,
                         "topology=" + TopologyName(k) + ";load=" + LoadName(load) +
                             ";architecture=" + ArchitectureName(a),
                         [=](const SimConfig& c) {
                           return c.topology == k && c.load == load && c.architecture == a;
                         },
                         "mechanism", mech, out);
          }
        }
      }
      break;
    default:
      throw std::invalid_argument("unknown experiment id " + std::to_string(experiment));
  }
  return out;
}

std::string ReportCsvHeader() {
  return "experiment,scope,metric,test,comparison,statistic,p_value,p_holm,effect,"
         "label,ci_lo,ci_hi";
}

void WriteReportCsv(const std::string& path, const std::vector<ReportRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  auto opt = [](const std::optional<double>& x) { return x ? Fmt(*x) : std::string(); };
  out << ReportCsvHeader() << '\n';
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.scope << ',' << r.metric << ',' << r.test << ','
        << r.comparison << ',' << Fmt(r.statistic) << ','
        << (std::isnan(r.p_value) ? std::string() : Fmt(r.p_value)) << ','
        << opt(r.p_holm) << ',' << opt(r.effect) << ',' << r.label << ','
        << opt(r.ci_lo) << ',' << opt(r.ci_hi) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace svcmarket
