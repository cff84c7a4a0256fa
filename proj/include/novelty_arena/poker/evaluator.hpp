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

// Hand evaluation under permutable rank and category orders.
//
// A five-card hand's category is decided by physical ranks and suits, the
// usual way: a straight is five physically consecutive ranks (the A-2-3-4-5
// wheel included) no matter how ranks are ordered for strength. Strength
// comes only from the rule set: categories compare by `category_order`,
// then the tiebreak ranks compare lexicographically by `rank_order`.
//
// Tiebreak lists hold physical ranks:
//   straight / straight flush / royal flush -> [top card of the run]
//   everything else -> rank groups by size, then by rank strength
//   (e.g. full house [trips, pair], two pair [high pair, low pair, kicker]).
// The best hand of 5-7 cards is the strongest of its five-card subsets.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "novelty_arena/core/errors.hpp"
#include "novelty_arena/poker/cards.hpp"
#include "novelty_arena/poker/rules.hpp"

namespace novelty_arena::poker {

struct HandValue {
  HandCategory category = HandCategory::HighCard;
  std::array<int, 5> tiebreak{};
  int tiebreak_size = 0;

  std::span<const int> ranks() const {
    return {tiebreak.data(), static_cast<std::size_t>(tiebreak_size)};
  }
  std::vector<int> ranks_vector() const { return {tiebreak.begin(), tiebreak.begin() + tiebreak_size}; }

  friend bool operator==(const HandValue& a, const HandValue& b) {
    return a.category == b.category && a.tiebreak_size == b.tiebreak_size &&
           std::equal(a.tiebreak.begin(), a.tiebreak.begin() + a.tiebreak_size, b.tiebreak.begin());
  }
};

// Totally ordered integer key: larger is stronger under `rules`.
inline std::uint32_t strength_key(const HandValue& v, const RuleSet& rules) {
  std::uint32_t key = static_cast<std::uint32_t>(rules.category_strength(v.category));
  for (int k = 0; k < 5; ++k) {
    key <<= 4;
    if (k < v.tiebreak_size)
      key |= static_cast<std::uint32_t>(rules.rank_strength(v.tiebreak[static_cast<std::size_t>(k)]));
  }
  return key;
}

// -1, 0 or +1 as `a` is weaker than, equal to or stronger than `b`.
inline int compare_hands(const HandValue& a, const HandValue& b, const RuleSet& rules) {
  const auto ka = strength_key(a, rules);
  const auto kb = strength_key(b, rules);
  return (ka > kb) - (ka < kb);
}

namespace detail {

inline HandValue classify_five(const std::array<Card, 5>& cards, const RuleSet& rules) {
  std::array<int, kMaxRank + 1> count{};
  bool flush = true;
  int lo = kMaxRank, hi = kMinRank;
  for (const auto& c : cards) {
    ++count[static_cast<std::size_t>(c.rank)];
    flush = flush && c.suit == cards[0].suit;
    lo = std::min(lo, c.rank);
    hi = std::max(hi, c.rank);
  }

  // Distinct ranks, grouped: (group size, rank).
  std::array<std::pair<int, int>, 5> groups{};
  int ngroups = 0;
  for (int r = kMinRank; r <= kMaxRank; ++r)
    if (count[static_cast<std::size_t>(r)] > 0)
      groups[static_cast<std::size_t>(ngroups++)] = {count[static_cast<std::size_t>(r)], r};

  HandValue v;
  if (ngroups == 5) {
    int top = 0;
    if (hi - lo == 4)
      top = hi;
    else if (count[14] && count[2] && count[3] && count[4] && count[5])
      top = 5;
    if (top != 0) {
      v.category = flush ? (top == kMaxRank ? HandCategory::RoyalFlush : HandCategory::StraightFlush)
                         : HandCategory::Straight;
      v.tiebreak[0] = top;
      v.tiebreak_size = 1;
      return v;
    }
  }

  std::sort(groups.begin(), groups.begin() + ngroups, [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return rules.rank_strength(x.second) > rules.rank_strength(y.second);
  });
  for (int k = 0; k < ngroups; ++k) v.tiebreak[static_cast<std::size_t>(k)] = groups[static_cast<std::size_t>(k)].second;
  v.tiebreak_size = ngroups;

  const int top_group = groups[0].first;
  if (top_group == 4)
    v.category = HandCategory::Quads;
  else if (top_group == 3 && ngroups == 2)
    v.category = HandCategory::FullHouse;
  else if (flush)
    v.category = HandCategory::Flush;
  else if (top_group == 3)
    v.category = HandCategory::Trips;
  else if (top_group == 2 && ngroups == 3)
    v.category = HandCategory::TwoPair;
  else if (top_group == 2)
    v.category = HandCategory::Pair;
  else
    v.category = HandCategory::HighCard;
  return v;
}

}  // namespace detail

inline void check_distinct(std::span<const Card> cards) {
  std::uint64_t seen = 0;
  for (const auto& c : cards) {
    const auto bit = std::uint64_t{1} << c.index();
    if (seen & bit) throw DuplicateCard("duplicate card " + to_string(c));
    seen |= bit;
  }
}

// Best five-card value among 5 to 7 distinct cards.
inline HandValue evaluate_hand(std::span<const Card> cards, const RuleSet& rules) {
  if (cards.size() < 5 || cards.size() > 7)
    throw InvalidArgument("evaluate_hand needs 5 to 7 cards, got " + std::to_string(cards.size()));
  check_distinct(cards);

  const unsigned n = static_cast<unsigned>(cards.size());
  HandValue best;
  std::uint32_t best_key = 0;
  bool have = false;
  std::array<Card, 5> pick{};
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != 5) continue;
    std::size_t k = 0;
    for (unsigned c = 0; c < n; ++c)
      if (mask & (1u << c)) pick[k++] = cards[c];
    const HandValue v = detail::classify_five(pick, rules);
    const auto key = strength_key(v, rules);
    if (!have || key > best_key) {
      best = v;
      best_key = key;
      have = true;
    }
  }
  return best;
}

// Evaluation under the classic orders. Strategies use this for their own
// hand reading, since they are not told about rule changes.
inline HandValue evaluate_standard(std::span<const Card> cards) {
  static const RuleSet kStandard;
  return evaluate_hand(cards, kStandard);
}

}  // namespace novelty_arena::poker
