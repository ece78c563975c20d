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

#include "svcmarket/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace svcmarket {
namespace {

const boost::math::normal kStdNormal(0.0, 1.0);

double Phi(double z) { return boost::math::cdf(kStdNormal, z); }
double PhiInv(double p) { return boost::math::quantile(kStdNormal, p); }

// Linear-interpolated quantile of sorted data.
double Quantile(const std::vector<double>& sorted, double q) {
  q = std::clamp(q, 0.0, 1.0);
  double pos = q * static_cast<double>(sorted.size() - 1);
  size_t lo = static_cast<size_t>(std::floor(pos));
  size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<double> Resample(const std::vector<double>& x,
                             std::mt19937_64& rng) {
  std::uniform_int_distribution<size_t> pick(0, x.size() - 1);
  std::vector<double> out(x.size());
  for (double& v : out) v = x[pick(rng)];
  return out;
}

double TwoSidedNormalP(double z) {
  return std::clamp(2.0 * (1.0 - Phi(std::fabs(z))), 0.0, 1.0);
}

}  // namespace

double Mean(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("mean of empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

std::vector<double> AverageRanks(const std::vector<double>& x) {
  std::vector<size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    double r = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

Interval BcaCi(const std::vector<double>& sample, const Statistic& stat,
               int resamples, double alpha, std::mt19937_64& rng) {
  if (sample.size() < 2) throw std::invalid_argument("BCa needs n >= 2");
  if (resamples < 10 || alpha <= 0.0 || alpha >= 1.0) {
    throw std::invalid_argument("bad bootstrap parameters");
  }
  const double theta = stat(sample);
  std::vector<double> boot(resamples);
  for (double& b : boot) b = stat(Resample(sample, rng));
  std::sort(boot.begin(), boot.end());
  const double lo_q = alpha / 2.0;
  const double hi_q = 1.0 - alpha / 2.0;
  Interval percentile{Quantile(boot, lo_q), Quantile(boot, hi_q)};
  if (boot.front() == boot.back()) return percentile;

  double below = 0.0;
  for (double b : boot) {
    if (b < theta) {
      below += 1.0;
    } else if (b == theta) {
      below += 0.5;
    }
  }
  double prop = below / static_cast<double>(resamples);
  if (prop <= 0.0 || prop >= 1.0) return percentile;
  const double z0 = PhiInv(prop);

  const size_t n = sample.size();
  std::vector<double> jack(n);
  std::vector<double> held;
  held.reserve(n - 1);
  for (size_t i = 0; i < n; ++i) {
    held.clear();
    for (size_t j = 0; j < n; ++j) {
      if (j != i) held.push_back(sample[j]);
    }
    jack[i] = stat(held);
  }
  double jbar = Mean(jack);
  double num = 0.0;
  double den = 0.0;
  for (double j : jack) {
    double d = jbar - j;
    num += d * d * d;
    den += d * d;
  }
  if (den <= 0.0) return percentile;
  const double a = num / (6.0 * std::pow(den, 1.5));

  auto adjusted = [&](double q) {
    double z = PhiInv(q);
    double denom = 1.0 - a * (z0 + z);
    if (denom <= 0.0) return std::nan("");
    return Phi(z0 + (z0 + z) / denom);
  };
  double a1 = adjusted(lo_q);
  double a2 = adjusted(hi_q);
  if (!std::isfinite(a1) || !std::isfinite(a2)) return percentile;
  return {Quantile(boot, a1), Quantile(boot, a2)};
}

TestResult KruskalWallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw std::invalid_argument("need >= 2 groups");
  std::vector<double> all;
  for (const auto& g : groups) {
    if (g.size() < 2) throw std::invalid_argument("each group needs >= 2");
    all.insert(all.end(), g.begin(), g.end());
  }
  const double n = static_cast<double>(all.size());
  std::vector<double> ranks = AverageRanks(all);
  double h = 0.0;
  size_t offset = 0;
  for (const auto& g : groups) {
    double r = 0.0;
    for (size_t i = 0; i < g.size(); ++i) r += ranks[offset + i];
    offset += g.size();
    h += r * r / static_cast<double>(g.size());
  }
  h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);
  std::vector<double> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  double ties = 0.0;
  for (size_t i = 0; i < sorted.size();) {
    size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    double t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  double correction = 1.0 - ties / (n * n * n - n);
  TestResult r;
  if (correction <= 0.0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    return r;
  }
  h = std::max(0.0, h / correction);
  boost::math::chi_squared chi(static_cast<double>(groups.size() - 1));
  r.statistic = h;
  r.p_value = std::clamp(boost::math::cdf(boost::math::complement(chi, h)),
                         0.0, 1.0);
  return r;
}

TestResult WilcoxonRankSum(const std::vector<double>& a,
                           const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("rank-sum needs >= 2 values per sample");
  }
  std::vector<double> all(a);
  all.insert(all.end(), b.begin(), b.end());
  std::vector<double> ranks = AverageRanks(all);
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double n = n1 + n2;
  double r1 = 0.0;
  for (size_t i = 0; i < a.size(); ++i) r1 += ranks[i];
  const double u = r1 - n1 * (n1 + 1.0) / 2.0;
  const double mu = n1 * n2 / 2.0;
  std::vector<double> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  double ties = 0.0;
  for (size_t i = 0; i < sorted.size();) {
    size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    double t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  double var = n1 * n2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
  TestResult r;
  r.statistic = u;
  if (var <= 0.0) {
    r.p_value = 1.0;
    return r;
  }
  double dev = std::max(0.0, std::fabs(u - mu) - 0.5);
  r.p_value = TwoSidedNormalP(dev / std::sqrt(var));
  return r;
}

std::vector<double> HolmAdjust(const std::vector<double>& p_values) {
  const size_t m = p_values.size();
  std::vector<size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return p_values[x] < p_values[y];
  });
  std::vector<double> adjusted(m);
  double running = 0.0;
  for (size_t k = 0; k < m; ++k) {
    double p = p_values[order[k]];
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p outside [0,1]");
    double adj = std::min(1.0, static_cast<double>(m - k) * p);
    running = std::max(running, adj);
    adjusted[order[k]] = running;
  }
  return adjusted;
}

std::string CliffMagnitude(double delta) {
  double d = std::fabs(delta);
  if (d < 0.147) return "negligible";
  if (d < 0.33) return "small";
  if (d < 0.474) return "medium";
  return "large";
}

TestResult CliffsDelta(const std::vector<double>& a,
                       const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
  int64_t greater = 0;
  int64_t less = 0;
  for (double x : a) {
    for (double y : b) {
      if (x > y) ++greater;
      if (x < y) ++less;
    }
  }
  double delta = static_cast<double>(greater - less) /
                 static_cast<double>(a.size() * b.size());
  TestResult r;
  r.statistic = delta;
  r.p_value = 1.0;
  r.effect = delta;
  r.magnitude = CliffMagnitude(delta);
  return r;
}

TestResult Spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
  if (x.size() < 3) throw std::invalid_argument("spearman needs n >= 3");
  std::vector<double> rx = AverageRanks(x);
  std::vector<double> ry = AverageRanks(y);
  double mx = Mean(rx);
  double my = Mean(ry);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  TestResult r;
  if (sxx <= 0.0 || syy <= 0.0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    return r;
  }
  double rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  r.statistic = rho;
  const double df = static_cast<double>(x.size()) - 2.0;
  if (std::fabs(rho) >= 1.0) {
    r.p_value = 0.0;
    return r;
  }
  double t = rho * std::sqrt(df / (1.0 - rho * rho));
  boost::math::students_t dist(df);
  r.p_value = std::clamp(
      2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))), 0.0,
      1.0);
  return r;
}

SynergyResult Synergy(const std::vector<double>& w_nn,
                      const std::vector<double>& w_hn,
                      const std::vector<double>& w_ns,
                      const std::vector<double>& w_hs, int resamples,
                      std::mt19937_64& rng) {
  for (const auto* cell : {&w_nn, &w_hn, &w_ns, &w_hs}) {
    if (cell->empty()) throw std::invalid_argument("empty synergy cell");
  }
  auto delta = [](double nn, double hn, double ns, double hs) {
    return (hs - nn) - (hn - nn) - (ns - nn);
  };
  SynergyResult r;
  r.delta = delta(Mean(w_nn), Mean(w_hn), Mean(w_ns), Mean(w_hs));
  std::vector<double> boot(std::max(resamples, 1));
  for (double& b : boot) {
    b = delta(Mean(Resample(w_nn, rng)), Mean(Resample(w_hn, rng)),
              Mean(Resample(w_ns, rng)), Mean(Resample(w_hs, rng)));
  }
  std::sort(boot.begin(), boot.end());
  r.ci = {Quantile(boot, 0.025), Quantile(boot, 0.975)};
  if (r.ci.lo > 0.0) {
    r.label = "super-additive";
  } else if (r.ci.hi < 0.0) {
    r.label = "sub-additive";
  } else {
    r.label = "additive";
  }
  return r;
}

}  // namespace svcmarket
