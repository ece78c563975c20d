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

// svcmarket_cli: theory checks, experiment runs and statistics reports.
//
// Exit codes: 0 ok, 1 usage, 2 I/O or input, 3 verification failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "svcmarket/experiments.h"
#include "svcmarket/report.h"
#include "svcmarket/simcore.h"
#include "svcmarket/theory_suite.h"

namespace fs = std::filesystem;
using namespace svcmarket;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerify = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string RawPath(const fs::path& out, int exp) {
  return (out / ("exp" + std::to_string(exp) + "_raw.csv")).string();
}

std::vector<int> ParseExp(const std::string& s, bool allow_all) {
  if (allow_all && s == "all") return {1, 2, 3, 4, 5, 6};
  if (s.size() == 1 && s[0] >= '1' && s[0] <= '6') return {s[0] - '0'};
  throw CLI::ValidationError("--exp", "expected 1..6" + std::string(allow_all ? " or all" : ""));
}

void EnsureDir(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw IoError("cannot create output directory " + out.string());
}

int VerifyTheory(bool inject) {
  TheorySuiteOptions opt;
  opt.inject_non_laminar = inject;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<CheckResult> results = RunTheorySuite(opt);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int failed = 0;
  for (const auto& c : results) {
    std::printf("%-4s %-32s n=%-4d %s\n", c.passed ? "ok" : "FAIL", c.name.c_str(),
                c.instances, c.detail.c_str());
    failed += !c.passed;
  }
  std::printf("%zu checks, %d failed, %.2f s\n", results.size(), failed, secs);
  return failed ? kExitVerify : kExitOk;
}

void Run(const std::vector<int>& exps, const fs::path& out, int seeds, int jobs,
         const Calibration& cal) {
  EnsureDir(out);
  for (int e : exps) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<GridPoint> grid = ExpandGrid(e, seeds);
    std::vector<RunResult> results = RunGrid(grid, jobs, cal);
    std::string agg = (out / ("exp" + std::to_string(e) + "_aggregate.csv")).string();
    WriteRawCsv(RawPath(out, e), results);
    WriteAggregateCsv(agg, Aggregate(results));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("exp %d: %zu runs in %.1f s\n", e, results.size(), secs);
  }
}

size_t Stats(int e, const fs::path& out) {
  std::string raw = RawPath(out, e);
  if (!fs::exists(raw)) throw IoError("missing " + raw + " (run --exp " + std::to_string(e) + " first)");
  std::vector<ReportRow> rows = AnalyzeExperiment(e, ReadRawCsv(raw));
  WriteReportCsv((out / ("exp" + std::to_string(e) + "_stats.csv")).string(), rows);
  return rows.size();
}

// Stats for every experiment with raw data, plus a plain-text digest.
void Report(const fs::path& out) {
  std::string path = (out / "report.txt").string();
  std::ofstream txt(path);
  if (!txt) throw IoError("cannot write " + path);
  int found = 0;
  for (int e = 1; e <= 6; ++e) {
    std::string raw = RawPath(out, e);
    if (!fs::exists(raw)) continue;
    ++found;
    std::vector<RunResult> results = ReadRawCsv(raw);
    std::vector<ReportRow> rows = AnalyzeExperiment(e, results);
    WriteReportCsv((out / ("exp" + std::to_string(e) + "_stats.csv")).string(), rows);
    txt << "== experiment " << e << ": " << results.size() << " runs\n";
    for (const auto& c : Aggregate(results)) {
      txt << "  " << ConditionKey(e, c.config);
      for (int m = 0; m < kNumMetrics; ++m) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " %s=%.4g", kMetricNames[m], c.metrics[m].mean);
        txt << buf;
      }
      txt << '\n';
    }
    for (const auto& r : rows) {
      if (r.test != "kruskal_wallis" && r.test != "synergy") continue;
      char buf[256];
      std::snprintf(buf, sizeof buf, "  %s [%s] %s %s: stat=%.4g p=%.3g %s\n", r.test.c_str(),
                    r.scope.c_str(), r.comparison.c_str(), r.metric.c_str(), r.statistic,
                    r.p_value, r.label.c_str());
      txt << buf;
    }
  }
  if (!found) throw IoError("no exp*_raw.csv under " + out.string());
  std::printf("wrote %s (%d experiments)\n", path.c_str(), found);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Service-market theory checks, simulation grids and statistics"};
  app.require_subcommand(1);

  std::string out = "out";
  int seeds = kSeedsPerCondition;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string cal_path = SVCMARKET_DEFAULT_CALIBRATION;
  std::string exp;
  bool inject = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "output directory")->capture_default_str();
    sub->add_option("--seeds", seeds, "replicates per condition")->check(CLI::Range(2, 1000))->capture_default_str();
    sub->add_option("--jobs", jobs, "parallel runs")->check(CLI::Range(1, 1024));
    sub->add_option("--calibration", cal_path, "calibration file")->capture_default_str();
  };

  CLI::App* verify = app.add_subcommand("verify-theory", "run the exact theory suite");
  verify->add_flag("--inject-non-laminar", inject, "add a crossing block family")->group("");
  add_common(verify);
  CLI::App* run = app.add_subcommand("run", "run experiment grids");
  run->add_option("--exp", exp, "1..6 or all")->required();
  add_common(run);
  CLI::App* stats = app.add_subcommand("stats", "hypothesis tests over a raw CSV");
  stats->add_option("--exp", exp, "1..6")->required();
  add_common(stats);
  CLI::App* report = app.add_subcommand("report", "stats for all runs plus a text digest");
  add_common(report);

  std::vector<int> exps;
  try {
    app.parse(argc, argv);
    if (run->parsed()) exps = ParseExp(exp, true);
    if (stats->parsed()) exps = ParseExp(exp, false);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return VerifyTheory(inject);
    if (run->parsed()) {
      Calibration cal;
      try {
        cal = LoadCalibration(cal_path);
      } catch (const std::exception& e) {
        throw IoError(e.what());
      }
      Run(exps, out, seeds, jobs, cal);
    }
    if (stats->parsed()) {
      EnsureDir(out);
      std::printf("exp %d: %zu test rows\n", exps[0], Stats(exps[0], out));
    }
    if (report->parsed()) Report(out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return kExitOk;
}
