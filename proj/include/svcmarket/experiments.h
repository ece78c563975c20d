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

// Experiment grids, seeded batch execution, per-condition aggregation and
// the CSV files consumed by plotting and the statistics report.
#ifndef SVCMARKET_EXPERIMENTS_H_
#define SVCMARKET_EXPERIMENTS_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "svcmarket/simcore.h"

namespace svcmarket {

constexpr int kNumExperiments = 6;
constexpr int kSeedsPerCondition = 10;
constexpr int kBootstrapResamples = 2000;

// One configured run: the replicate index is the "seed" reported in CSVs,
// config.seed is the derived generator seed.
struct GridPoint {
  int experiment = 1;
  int replicate = 0;
  SimConfig config;
};

struct RunResult {
  GridPoint point;
  MetricSummary summary;
};

constexpr int kNumMetrics = 8;
extern const std::array<const char*, kNumMetrics> kMetricNames;
std::array<double, kNumMetrics> MetricValues(const MetricSummary& m);

struct MetricStat {
  double mean = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

struct ConditionSummary {
  int experiment = 1;
  SimConfig config;  // seed is meaningless here
  int n_seeds = 0;
  std::array<MetricStat, kNumMetrics> metrics;
};

// Condition key over every varied factor (not the replicate).
std::string ConditionKey(int experiment, const SimConfig& config);
// FNV-1a; stable across platforms and runs.
uint64_t StableHash(const std::string& s);
uint64_t DeriveSeed(int experiment, const SimConfig& config, int replicate);

// Throws std::invalid_argument for ids outside 1..6 or seeds < 1.
std::vector<GridPoint> ExpandGrid(int experiment, int seeds = kSeedsPerCondition);

// Runs every point on up to `jobs` threads; the output order matches the
// input. A failing run rethrows as std::runtime_error naming its config.
std::vector<RunResult> RunGrid(const std::vector<GridPoint>& points, int jobs,
                               const Calibration& cal);

// Groups by condition and attaches means with BCa intervals. Requires at
// least two replicates per condition. Output is sorted by condition key.
std::vector<ConditionSummary> Aggregate(const std::vector<RunResult>& results,
                                        int resamples = kBootstrapResamples);

std::string RawCsvHeader();
std::string AggregateCsvHeader();
void WriteRawCsv(const std::string& path, const std::vector<RunResult>& results);
void WriteAggregateCsv(const std::string& path,
                       const std::vector<ConditionSummary>& summaries);
// Reads a file produced by WriteRawCsv.
std::vector<RunResult> ReadRawCsv(const std::string& path);

}  // namespace svcmarket

#endif  // SVCMARKET_EXPERIMENTS_H_
