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

// Per-experiment hypothesis tests over raw run results.
#ifndef SVCMARKET_REPORT_H_
#define SVCMARKET_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svcmarket/experiments.h"
#include "svcmarket/stats.h"

namespace svcmarket {

struct ReportRow {
  int experiment = 0;
  std::string scope;       // fixed factors, e.g. "load=1.5"
  std::string metric;
  std::string test;        // kruskal_wallis | wilcoxon | spearman | synergy
  std::string comparison;  // e.g. "tree vs sp" or "topology"
  double statistic = 0.0;
  double p_value = 1.0;
  std::optional<double> p_holm;
  std::optional<double> effect;
  std::string label;       // Cliff magnitude or synergy label
  std::optional<double> ci_lo;
  std::optional<double> ci_hi;
};

// Welfare values of the replicates of one condition in `results`.
std::vector<double> ConditionSample(const std::vector<RunResult>& results,
                                    const SimConfig& config, int metric);

// Exp-5 welfare synergy for one topology and load.
SynergyResult WelfareSynergy(const std::vector<RunResult>& results,
                             TopologyKind topology, double load,
                             int resamples = kBootstrapResamples);

// Test tables for one experiment. Throws std::invalid_argument when the
// results hold no runs of that experiment.
std::vector<ReportRow> AnalyzeExperiment(int experiment,
                                         const std::vector<RunResult>& results);

std::string ReportCsvHeader();
void WriteReportCsv(const std::string& path, const std::vector<ReportRow>& rows);

}  // namespace svcmarket

#endif  // SVCMARKET_REPORT_H_
