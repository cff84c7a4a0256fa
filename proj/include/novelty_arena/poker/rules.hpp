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

// The mutable rules of heads-up hold'em and the five rule novelties.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "novelty_arena/core/errors.hpp"
#include "novelty_arena/core/rng.hpp"
#include "novelty_arena/poker/cards.hpp"

namespace novelty_arena::poker {

enum class HandCategory : std::uint8_t {
  HighCard,
  Pair,
  TwoPair,
  Trips,
  Straight,
  Flush,
  FullHouse,
  Quads,
  StraightFlush,
  RoyalFlush,
};
inline constexpr int kCategoryCount = 10;

inline constexpr std::array<std::string_view, kCategoryCount> kCategoryNames{
    "HighCard", "Pair",      "TwoPair", "Trips",         "Straight",
    "Flush",    "FullHouse", "Quads",   "StraightFlush", "RoyalFlush"};

inline std::string_view to_string(HandCategory c) {
  return kCategoryNames[static_cast<std::size_t>(c)];
}

inline HandCategory parse_category(std::string_view s) {
  for (int k = 0; k < kCategoryCount; ++k)
    if (kCategoryNames[static_cast<std::size_t>(k)] == s) return static_cast<HandCategory>(k);
  throw InvalidArgument("unknown hand category '" + std::string(s) + "'");
}

enum class Street : std::uint8_t { PreFlop, Flop, Turn, River, Showdown };
inline constexpr std::array<std::string_view, 5> kStreetNames{"preflop", "flop", "turn",
                                                              "river", "showdown"};
inline std::string_view to_string(Street s) { return kStreetNames[static_cast<std::size_t>(s)]; }

enum class ActionKind : std::uint8_t { Fold, Check, Call, Raise, AllIn };
inline constexpr std::array<std::string_view, 5> kActionNames{"fold", "check", "call", "raise",
                                                              "allin"};
inline std::string_view to_string(ActionKind a) { return kActionNames[static_cast<std::size_t>(a)]; }
inline ActionKind parse_action_kind(std::string_view s) {
  for (std::size_t k = 0; k < kActionNames.size(); ++k)
    if (kActionNames[k] == s) return static_cast<ActionKind>(k);
  throw InvalidArgument("unknown action '" + std::string(s) + "'");
}

// Bit set over ActionKind.
class ActionSet {
 public:
  constexpr ActionSet() = default;
  constexpr ActionSet(std::initializer_list<ActionKind> kinds) {
    for (auto k : kinds) insert(k);
  }
  static constexpr ActionSet all() {
    return {ActionKind::Fold, ActionKind::Check, ActionKind::Call, ActionKind::Raise,
            ActionKind::AllIn};
  }
  constexpr void insert(ActionKind k) { bits_ |= bit(k); }
  constexpr void erase(ActionKind k) { bits_ &= static_cast<std::uint8_t>(~bit(k)); }
  constexpr bool contains(ActionKind k) const { return (bits_ & bit(k)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  friend constexpr bool operator==(ActionSet, ActionSet) = default;

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < kActionNames.size(); ++k)
      if (contains(static_cast<ActionKind>(k))) out.emplace_back(kActionNames[k]);
    return out;
  }

 private:
  static constexpr std::uint8_t bit(ActionKind k) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k));
  }
  std::uint8_t bits_ = 0;
};

// Keeps cards whose rank is at least `min_rank`.
struct DeckFilter {
  int min_rank = kMinRank;
  constexpr bool operator()(const Card& c) const { return c.rank >= min_rank; }
  friend constexpr bool operator==(const DeckFilter&, const DeckFilter&) = default;
};

// Minimum filtered deck: two hole pairs plus a full board.
inline constexpr std::size_t kMinDeckSize = 9;

class RuleSet {
 public:
  RuleSet() {
    for (int k = 0; k < kRankCount; ++k) rank_order_[static_cast<std::size_t>(k)] = kMaxRank - k;
    for (int k = 0; k < kCategoryCount; ++k)
      category_order_[static_cast<std::size_t>(k)] =
          static_cast<HandCategory>(kCategoryCount - 1 - k);
    reindex();
    street_actions.fill(ActionSet::all());
  }

  static RuleSet standard() { return RuleSet(); }

  // Ranks from strongest to weakest. Must be a permutation of 2..14.
  const std::array<int, kRankCount>& rank_order() const { return rank_order_; }
  void set_rank_order(const std::array<int, kRankCount>& order) {
    std::array<bool, kMaxRank + 1> seen{};
    for (int r : order) {
      if (r < kMinRank || r > kMaxRank || seen[static_cast<std::size_t>(r)])
        throw InvalidArgument("rank order is not a permutation of 2..14");
      seen[static_cast<std::size_t>(r)] = true;
    }
    rank_order_ = order;
    reindex();
  }

  // Categories from strongest to weakest. Must be a permutation.
  const std::array<HandCategory, kCategoryCount>& category_order() const {
    return category_order_;
  }
  void set_category_order(const std::array<HandCategory, kCategoryCount>& order) {
    std::array<bool, kCategoryCount> seen{};
    for (auto c : order) {
      const auto k = static_cast<std::size_t>(c);
      if (k >= kCategoryCount || seen[k])
        throw InvalidArgument("category order is not a permutation");
      seen[k] = true;
    }
    category_order_ = order;
    reindex();
  }

  // 0 (weakest) .. 12 (strongest).
  int rank_strength(int rank) const { return rank_strength_[static_cast<std::size_t>(rank)]; }
  // 0 (weakest) .. 9 (strongest).
  int category_strength(HandCategory c) const {
    return category_strength_[static_cast<std::size_t>(c)];
  }

  ActionSet actions_on(Street s) const {
    if (s == Street::Showdown) return {};
    return street_actions[static_cast<std::size_t>(s)];
  }

  // Deck after the filter, in canonical index order.
  std::vector<Card> deck() const {
    std::vector<Card> out;
    for (const auto& c : standard_deck())
      if (deck_filter(c)) out.push_back(c);
    if (out.size() < kMinDeckSize)
      throw InvalidArgument("deck filter leaves fewer than 9 cards");
    return out;
  }

  DeckFilter deck_filter;
  std::array<ActionSet, 4> street_actions{};
  bool exchange_hands = false;
  int novelty_id = 0;  // 0 = no novelty

  friend bool operator==(const RuleSet& a, const RuleSet& b) {
    return a.rank_order_ == b.rank_order_ && a.category_order_ == b.category_order_ &&
           a.deck_filter == b.deck_filter && a.street_actions == b.street_actions &&
           a.exchange_hands == b.exchange_hands && a.novelty_id == b.novelty_id;
  }

 private:
  void reindex() {
    for (int k = 0; k < kRankCount; ++k)
      rank_strength_[static_cast<std::size_t>(rank_order_[static_cast<std::size_t>(k)])] =
          kRankCount - 1 - k;
    for (int k = 0; k < kCategoryCount; ++k)
      category_strength_[static_cast<std::size_t>(category_order_[static_cast<std::size_t>(k)])] =
          kCategoryCount - 1 - k;
  }

  std::array<int, kRankCount> rank_order_{};
  std::array<HandCategory, kCategoryCount> category_order_{};
  std::array<int, kMaxRank + 1> rank_strength_{};
  std::array<int, kCategoryCount> category_strength_{};
};

inline constexpr int kPokerNoveltyCount = 5;

inline constexpr std::array<std::string_view, kPokerNoveltyCount> kPokerNoveltyNames{
    "exchange_hand", "reorder_hand_ranking", "reorder_number_ranking", "royal_texas",
    "action_constraints"};

// Rules for poker novelty `id`:
//   1 exchange hands before showdown, 2 shuffled category order,
//   3 shuffled rank order, 4 deck limited to ranks 10..A,
//   5 pre-flop {Call, Fold} and flop {AllIn, Fold}.
// Shuffles are drawn from `seed`, so the permutation is fixed per (id, seed).
inline RuleSet apply_poker_novelty(int id, std::uint64_t seed) {
  RuleSet rules;
  rules.novelty_id = id;
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(id)));
  switch (id) {
    case 1:
      rules.exchange_hands = true;
      break;
    case 2: {
      auto order = rules.category_order();
      rng.shuffle(std::span<HandCategory>(order));
      rules.set_category_order(order);
      break;
    }
    case 3: {
      auto order = rules.rank_order();
      rng.shuffle(std::span<int>(order));
      rules.set_rank_order(order);
      break;
    }
    case 4:
      rules.deck_filter.min_rank = 10;
      break;
    case 5:
      rules.street_actions[static_cast<std::size_t>(Street::PreFlop)] = {ActionKind::Call,
                                                                         ActionKind::Fold};
      rules.street_actions[static_cast<std::size_t>(Street::Flop)] = {ActionKind::AllIn,
                                                                      ActionKind::Fold};
      break;
    default:
      throw UnknownNovelty("poker novelty " + std::to_string(id) + " is not in [1, 5]");
  }
  return rules;
}

inline nlohmann::json rules_to_json(const RuleSet& r) {
  nlohmann::json cats = nlohmann::json::array();
  for (auto c : r.category_order()) cats.push_back(std::string(to_string(c)));
  nlohmann::json actions = nlohmann::json::array();
  for (const auto& s : r.street_actions) actions.push_back(s.names());
  return {{"novelty_id", r.novelty_id},
          {"rank_order", r.rank_order()},
          {"category_order", cats},
          {"deck_min_rank", r.deck_filter.min_rank},
          {"street_actions", actions},
          {"exchange_hands", r.exchange_hands}};
}

inline RuleSet rules_from_json(const nlohmann::json& j) {
  try {
    RuleSet r;
    r.novelty_id = j.at("novelty_id").get<int>();
    r.set_rank_order(j.at("rank_order").get<std::array<int, kRankCount>>());
    std::array<HandCategory, kCategoryCount> cats{};
    const auto& jc = j.at("category_order");
    if (jc.size() != kCategoryCount) throw InvalidArgument("category_order needs 10 entries");
    for (std::size_t k = 0; k < kCategoryCount; ++k)
      cats[k] = parse_category(jc[k].get<std::string>());
    r.set_category_order(cats);
    r.deck_filter.min_rank = j.at("deck_min_rank").get<int>();
    const auto& ja = j.at("street_actions");
    if (ja.size() != 4) throw InvalidArgument("street_actions needs 4 entries");
    for (std::size_t s = 0; s < 4; ++s) {
      ActionSet set;
      for (const auto& name : ja[s]) set.insert(parse_action_kind(name.get<std::string>()));
      r.street_actions[s] = set;
    }
    r.exchange_hands = j.at("exchange_hands").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("rules json: ") + e.what());
  }
}

}  // namespace novelty_arena::poker
