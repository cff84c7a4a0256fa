// Copyright 2026 The Novelty Arena Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Per-agent robustness, global impact and the significance protocol.
//
// Robustness of agent i under novelty j is the mean of row i of the
// post-novelty matrix, diagonal excluded. Global impact of novelty j is the
// mean absolute change of the off-diagonal cells between the default and
// post-novelty matrices; its standard error is the sample standard
// deviation of those changes divided by sqrt(n(n-1)).
//
// Significance: a two-tailed one-sample t-test per agent of its k
// robustness values against its own default-matrix row mean, flagged at
// p < 0.05 and p < 0.01. No multiple-comparison correction is applied.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "novelty_arena/core/agent_matrix.hpp"
#include "novelty_arena/core/errors.hpp"
#include "novelty_arena/metrics/student_t.hpp"

namespace novelty_arena::metrics {

struct RobustnessVector {
  AgentId agent;
  std::vector<double> values;  // one per novelty, in input order
};

struct ImpactResult {
  int novelty = 0;
  double mean_abs_delta = 0.0;
  double std_error = 0.0;
  std::size_t n_pairs = 0;
};

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
};

struct SignificanceResult {
  AgentId agent;
  double t_statistic = 0.0;
  double p_value = 1.0;
  bool significant_95 = false;
  bool significant_99 = false;
  double baseline_mean = 0.0;
};

inline double off_diagonal_row_mean(const AgentMatrix& m, std::size_t i) {
  const std::size_t n = m.size();
  if (n < 2) throw InvalidArgument("row mean needs at least 2 agents");
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    if (j != i) sum += m(i, j);
  return sum / static_cast<double>(n - 1);
}

inline std::vector<RobustnessVector> per_agent_robustness(
    std::span<const AgentMatrix> post_matrices) {
  if (post_matrices.empty()) throw InvalidArgument("robustness needs at least one matrix");
  const auto& first = post_matrices.front();
  for (const auto& m : post_matrices)
    if (!m.same_labels(first)) throw LabelMismatch("post-novelty matrices disagree on agents");
  std::vector<RobustnessVector> out;
  out.reserve(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    RobustnessVector rv{first.labels()[i], {}};
    rv.values.reserve(post_matrices.size());
    for (const auto& m : post_matrices) rv.values.push_back(off_diagonal_row_mean(m, i));
    out.push_back(std::move(rv));
  }
  return out;
}

inline ImpactResult global_impact(const AgentMatrix& pre, const AgentMatrix& post,
                                  int novelty = 0) {
  if (!pre.same_labels(post)) throw LabelMismatch("pre and post matrices disagree on agents");
  const std::size_t n = pre.size();
  if (n < 2) throw InvalidArgument("impact needs at least 2 agents");
  std::vector<double> deltas;
  deltas.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) deltas.push_back(std::fabs(post(i, j) - pre(i, j)));
  double sum = 0.0;
  for (double d : deltas) sum += d;
  const double count = static_cast<double>(deltas.size());
  const double mean = sum / count;
  double ss = 0.0;
  for (double d : deltas) ss += (d - mean) * (d - mean);
  const double sd = deltas.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
  return {novelty, mean, sd / std::sqrt(count), deltas.size()};
}

// t = (mean - mu0) / (s / sqrt(k)), two-tailed p with k - 1 degrees of
// freedom. Zero sample variance gives (0, 1) when the mean equals mu0 and
// (+-inf, 0) otherwise.
inline TTestResult one_sample_ttest(std::span<const double> samples, double mu0) {
  const std::size_t k = samples.size();
  if (k < 2) throw InsufficientSamples("t-test needs at least 2 samples");
  const bool constant =
      std::all_of(samples.begin(), samples.end(), [&](double x) { return x == samples[0]; });
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double mean = constant ? samples[0] : sum / static_cast<double>(k);
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double var = constant ? 0.0 : ss / static_cast<double>(k - 1);
  if (var == 0.0) {
    if (mean == mu0) return {0.0, 1.0};
    return {mean > mu0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity(),
            0.0};
  }
  const double t = (mean - mu0) / std::sqrt(var / static_cast<double>(k));
  return {t, student_t_two_tailed_p(t, static_cast<double>(k - 1))};
}

inline std::vector<SignificanceResult> significance_report(
    std::span<const RobustnessVector> robustness, const AgentMatrix& baseline) {
  if (robustness.size() != baseline.size())
    throw LabelMismatch("robustness vectors and baseline differ in agent count");
  std::vector<SignificanceResult> out;
  for (std::size_t i = 0; i < robustness.size(); ++i) {
    if (!(robustness[i].agent == baseline.labels()[i]))
      throw LabelMismatch("robustness agent '" + robustness[i].agent.name +
                          "' does not match baseline label");
    const double mu0 = off_diagonal_row_mean(baseline, i);
    const auto tt = one_sample_ttest(robustness[i].values, mu0);
    out.push_back({robustness[i].agent, tt.t, tt.p, tt.p < 0.05, tt.p < 0.01, mu0});
  }
  return out;
}

struct FiveNumberSummary {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

// Quartiles by linear interpolation between order statistics (the
// "type 7" rule used by NumPy and R by default).
inline FiveNumberSummary five_number_summary(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("five-number summary of an empty sample");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + (values[hi] - values[lo]) * frac;
  };
  return {values.front(), quantile(0.25), quantile(0.5), quantile(0.75), values.back()};
}

}  // namespace novelty_arena::metrics
