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

// Slow, independent reference implementations used by the tests and the
// acceptance binary. They share no code with the library beyond the plain
// data types.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "novelty_arena/core/agent_matrix.hpp"
#include "novelty_arena/poker/cards.hpp"
#include "novelty_arena/poker/rules.hpp"

namespace oracle {

namespace np = novelty_arena::poker;

// A hand value as (category strength, rank strengths in tiebreak order).
using PokerKey = std::pair<int, std::vector<int>>;

inline np::HandCategory category_of_five(const std::array<np::Card, 5>& h, int* straight_top) {
  std::map<int, int> counts;
  std::map<int, int> suits;
  for (const auto& c : h) {
    ++counts[c.rank];
    ++suits[static_cast<int>(c.suit)];
  }
  const bool flush = suits.size() == 1;
  *straight_top = 0;
  if (counts.size() == 5) {
    std::vector<int> r;
    for (const auto& [rank, n] : counts) r.push_back(rank);
    if (r[4] - r[0] == 4) *straight_top = r[4];
    if (r == std::vector<int>{2, 3, 4, 5, 14}) *straight_top = 5;
  }
  std::vector<int> shape;
  for (const auto& [rank, n] : counts) shape.push_back(n);
  std::sort(shape.rbegin(), shape.rend());
  using C = np::HandCategory;
  if (*straight_top && flush) return *straight_top == 14 ? C::RoyalFlush : C::StraightFlush;
  if (shape[0] == 4) return C::Quads;
  if (shape == std::vector<int>{3, 2}) return C::FullHouse;
  if (flush) return C::Flush;
  if (*straight_top) return C::Straight;
  if (shape[0] == 3) return C::Trips;
  if (shape == std::vector<int>{2, 2, 1}) return C::TwoPair;
  if (shape[0] == 2) return C::Pair;
  return C::HighCard;
}

// Position-based strengths, recomputed from the rule set's public orders.
inline int rank_strength(const np::RuleSet& r, int rank) {
  const auto& o = r.rank_order();
  const auto it = std::find(o.begin(), o.end(), rank);
  return static_cast<int>(o.end() - it) - 1;
}

inline int category_strength(const np::RuleSet& r, np::HandCategory c) {
  const auto& o = r.category_order();
  const auto it = std::find(o.begin(), o.end(), c);
  return static_cast<int>(o.end() - it) - 1;
}

inline PokerKey key_of_five(const std::array<np::Card, 5>& h, const np::RuleSet& rules) {
  int top = 0;
  const auto cat = category_of_five(h, &top);
  PokerKey key{category_strength(rules, cat), {}};
  if (top) {
    key.second.push_back(rank_strength(rules, top));
    return key;
  }
  std::map<int, int> counts;
  for (const auto& c : h) ++counts[c.rank];
  std::vector<std::pair<int, int>> groups;  // (count, strength)
  for (const auto& [rank, n] : counts) groups.push_back({n, rank_strength(rules, rank)});
  std::sort(groups.rbegin(), groups.rend());
  for (const auto& g : groups) key.second.push_back(g.second);
  return key;
}

// Best key over all 5-card subsets, by nested loops.
inline PokerKey best_key(std::span<const np::Card> cards, const np::RuleSet& rules) {
  const std::size_t n = cards.size();
  PokerKey best{-1, {}};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d)
          for (std::size_t e = d + 1; e < n; ++e) {
            const auto k = key_of_five({cards[a], cards[b], cards[c], cards[d], cards[e]}, rules);
            if (k > best) best = k;
          }
  return best;
}

inline int compare(const PokerKey& a, const PokerKey& b) { return (a > b) - (a < b); }

// Two-tailed Student t p-value by adaptive Simpson integration of the
// density over [|t|, inf) after the substitution x = |t| + s / (1 - s).
inline double t_two_tailed_p(double t, double df) {
  using ld = long double;
  const ld nu = df;
  const ld norm = std::exp(std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2)) / std::sqrt(nu * M_PIl);
  const ld a = std::fabs(static_cast<ld>(t));
  const std::function<ld(ld)> f = [&](ld s) -> ld {
    if (s >= 1) return 0;
    const ld x = a + s / (1 - s);
    const ld jac = 1 / ((1 - s) * (1 - s));
    return norm * std::pow(1 + x * x / nu, -(nu + 1) / 2) * jac;
  };
  const std::function<ld(ld, ld, ld, ld, ld, ld, int)> simpson =
      [&](ld lo, ld hi, ld flo, ld fmid, ld fhi, ld whole, int depth) -> ld {
    const ld mid = (lo + hi) / 2;
    const ld lm = (lo + mid) / 2, rm = (mid + hi) / 2;
    const ld flm = f(lm), frm = f(rm);
    const ld left = (mid - lo) / 6 * (flo + 4 * flm + fmid);
    const ld right = (hi - mid) / 6 * (fmid + 4 * frm + fhi);
    if (depth <= 0 || std::fabs(left + right - whole) < 1e-15L)
      return left + right + (left + right - whole) / 15;
    return simpson(lo, mid, flo, flm, fmid, left, depth - 1) +
           simpson(mid, hi, fmid, frm, fhi, right, depth - 1);
  };
  const ld f0 = f(0), fh = f(0.5L), f1 = f(1);
  const ld whole = (f0 + 4 * fh + f1) / 6;
  return static_cast<double>(2 * simpson(0, 1, f0, fh, f1, whole, 40));
}

// Robustness and impact straight from their definitions, summed in the
// order the formulas are written.
inline double row_mean(const novelty_arena::AgentMatrix& m, std::size_t i) {
  double s = 0;
  for (std::size_t j = 0; j < m.size(); ++j)
    if (j != i) s += m(i, j);
  return s / static_cast<double>(m.size() - 1);
}

// (mean |delta|, standard error) over the off-diagonal cells.
inline std::pair<double, double> impact(const novelty_arena::AgentMatrix& pre,
                                        const novelty_arena::AgentMatrix& post) {
  std::vector<double> d;
  for (std::size_t i = 0; i < pre.size(); ++i)
    for (std::size_t j = 0; j < pre.size(); ++j)
      if (i != j) d.push_back(std::fabs(post(i, j) - pre(i, j)));
  const double n = static_cast<double>(d.size());
  double mean = 0;
  for (double x : d) mean += x;
  mean /= n;
  double ss = 0;
  for (double x : d) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1)) / std::sqrt(n)};
}

// One-sample t statistic in long double; zero variance follows the
// convention (0, 1) at the hypothesised mean and (+-inf, 0) elsewhere.
inline std::pair<double, double> ttest(std::span<const double> xs, double mu0) {
  using ld = long double;
  const ld k = static_cast<ld>(xs.size());
  ld mean = 0;
  for (double x : xs) mean += x;
  mean /= k;
  ld ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const bool flat = std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs[0]; });
  if (flat) {
    if (xs[0] == mu0) return {0.0, 1.0};
    return {xs[0] > mu0 ? INFINITY : -INFINITY, 0.0};
  }
  const ld t = (mean - mu0) / std::sqrt(ss / (k - 1) / k);
  return {static_cast<double>(t), t_two_tailed_p(static_cast<double>(t), static_cast<double>(k - 1))};
}

}  // namespace oracle
