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

// The ten fixed poker strategies.
//
// Strategies are stateless: a decision depends only on the PokerView and
// the per-hand random stream, so one instance can serve any number of
// concurrent tables. They read their own hands with the classic rankings
// because nobody tells them the rules changed; only the legal action set
// reflects the live rule set.
//
// Shared interpretations:
//  * "previous bet" is the outstanding bet on the street, or the big blind
//    when nothing has been bet yet.
//  * "call" with nothing owed is a check; a conditional caller whose
//    condition fails checks when that is free and folds otherwise.
//  * Agents 1-8 reuse their flop behaviour on the turn and river.
//  * Call-AT and Call-Flop are identical pre-flop; they differ after it.

#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "novelty_arena/core/errors.hpp"
#include "novelty_arena/core/rng.hpp"
#include "novelty_arena/poker/betting.hpp"
#include "novelty_arena/poker/evaluator.hpp"

namespace novelty_arena::poker {

inline constexpr int kPokerAgentCount = 10;

struct PokerView {
  std::array<Card, 2> hole;
  std::span<const Card> board;
  Street street = Street::PreFlop;
  const LegalActions& legal;
  int to_call = 0;
  int current_bet = 0;
  int own_stack = 0;
  int opponent_stack = 0;
  int pot = 0;
  int own_street_contribution = 0;
  int own_total_contribution = 0;
  bool opponent_all_in = false;
  int big_blind = 10;
  int starting_stack = 1000;
  const RuleSet& rules;

  int previous_bet() const { return current_bet > 0 ? current_bet : big_blind; }
  std::vector<Card> visible_cards() const {
    std::vector<Card> cards(hole.begin(), hole.end());
    cards.insert(cards.end(), board.begin(), board.end());
    return cards;
  }
};

class PokerStrategy {
 public:
  PokerStrategy(int id, std::string name) : id_(id), name_(std::move(name)) {}
  virtual ~PokerStrategy() = default;

  int id() const { return id_; }
  const std::string& name() const { return name_; }

  virtual PokerAction decide(const PokerView& view, Rng& rng) const = 0;

 private:
  int id_;
  std::string name_;
};

namespace hands {

inline bool is_pair(const std::array<Card, 2>& h) { return h[0].rank == h[1].rank; }

// "pairs 7-A or 10-A combinations"
inline bool pair_or_broadway(const std::array<Card, 2>& h) {
  if (is_pair(h) && h[0].rank >= 7) return true;
  return h[0].rank >= 10 && h[1].rank >= 10;
}

// Background agents' pre-flop tiers. Returns the fraction of the starting
// stack the agent is willing to commit this hand.
//   tier 1: AA KK QQ                                    -> 100%
//   tier 2: JJ..88, AK, AQ                              -> 25%
//   tier 3: other pairs, suited cards both 10 or above  -> 10%
//   otherwise                                           -> 0 (fold to any bet)
inline double commitment_limit(const std::array<Card, 2>& h) {
  const int hi = std::max(h[0].rank, h[1].rank);
  const int lo = std::min(h[0].rank, h[1].rank);
  if (is_pair(h)) {
    if (hi >= 12) return 1.0;
    if (hi >= 8) return 0.25;
    return 0.10;
  }
  if (hi == 14 && lo >= 12) return 0.25;
  if (h[0].suit == h[1].suit && lo >= 10) return 0.10;
  return 0.0;
}

// Top pair or better: two pair or more, a pocket pair above the board, or a
// hole card pairing the highest board rank.
inline bool top_pair_or_better(const std::array<Card, 2>& hole, std::span<const Card> board) {
  if (board.empty()) return false;
  std::vector<Card> cards(hole.begin(), hole.end());
  cards.insert(cards.end(), board.begin(), board.end());
  if (cards.size() < 5) return false;
  const auto v = evaluate_standard(cards);
  if (v.category >= HandCategory::TwoPair) return true;
  if (v.category != HandCategory::Pair) return false;
  int board_top = 0;
  for (const auto& c : board) board_top = std::max(board_top, c.rank);
  if (is_pair(hole) && hole[0].rank > board_top) return true;
  return (hole[0].rank == board_top || hole[1].rank == board_top) && v.tiebreak[0] == board_top;
}

// At least three visible cards sharing a rank or a suit.
inline bool three_of_a_kind_or_suit(std::span<const Card> cards) {
  std::array<int, kMaxRank + 1> ranks{};
  std::array<int, 4> suits{};
  for (const auto& c : cards) {
    if (++ranks[static_cast<std::size_t>(c.rank)] >= 3) return true;
    if (++suits[static_cast<std::size_t>(c.suit)] >= 3) return true;
  }
  return false;
}

}  // namespace hands

namespace agents {

inline PokerAction check_or_fold(const PokerView& v) {
  return v.legal.contains(ActionKind::Check) ? PokerAction::check() : PokerAction::fold();
}

// Call (check when free). Uses AllIn when calling takes the whole stack.
inline PokerAction call_or_check(const PokerView& v) {
  if (v.to_call == 0) return PokerAction::check();
  if (v.to_call >= v.own_stack) return PokerAction::all_in();
  return PokerAction::call();
}

inline PokerAction raise_to_or_call(const PokerView& v, int target) {
  if (v.own_stack + v.own_street_contribution > target) return PokerAction::raise_to(target);
  return call_or_check(v);
}

class Raise final : public PokerStrategy {
 public:
  Raise() : PokerStrategy(1, "Raise") {}
  PokerAction decide(const PokerView& v, Rng&) const override {
    if (v.street != Street::PreFlop && v.opponent_all_in) return PokerAction::fold();
    const int target = 2 * v.previous_bet();
    if (v.own_stack > target) return PokerAction::raise_to(target);
    return call_or_check(v);
  }
};

class Call final : public PokerStrategy {
 public:
  Call() : PokerStrategy(2, "Call") {}
  PokerAction decide(const PokerView& v, Rng&) const override {
    if (v.street != Street::PreFlop && v.opponent_all_in) return PokerAction::fold();
    if (v.own_stack >= v.to_call) return call_or_check(v);
    return check_or_fold(v);
  }
};

// Uniform over the allowed kinds among {fold, call/check, raise, all-in};
// raises are minimum raises.
class RandomAgent final : public PokerStrategy {
 public:
  RandomAgent() : PokerStrategy(3, "Random") {}
  PokerAction decide(const PokerView& v, Rng& rng) const override {
    std::vector<PokerAction> options;
    options.push_back(PokerAction::fold());
    if (v.legal.contains(ActionKind::Check))
      options.push_back(PokerAction::check());
    else if (v.legal.contains(ActionKind::Call))
      options.push_back(PokerAction::call());
    if (v.legal.contains(ActionKind::Raise)) options.push_back(PokerAction::raise_to(v.legal.min_raise_to));
    if (v.legal.contains(ActionKind::AllIn)) options.push_back(PokerAction::all_in());
    return options[static_cast<std::size_t>(rng.below(options.size()))];
  }
};

// Shared post-flop behaviour of agents 4-7: keep going at their own bet
// size, give up against an all-in.
inline PokerAction postflop_follow(const PokerView& v, int multiplier) {
  if (v.opponent_all_in) return PokerAction::fold();
  if (multiplier <= 1) return call_or_check(v);
  return raise_to_or_call(v, multiplier * v.previous_bet());
}

class CallAT final : public PokerStrategy {
 public:
  CallAT() : PokerStrategy(4, "Call-AT") {}
  PokerAction decide(const PokerView& v, Rng&) const override {
    if (v.street == Street::PreFlop)
      return hands::pair_or_broadway(v.hole) ? call_or_check(v) : check_or_fold(v);
    return postflop_follow(v, 1);
  }
};

class RaiseAT final : public PokerStrategy {
 public:
  RaiseAT() : PokerStrategy(5, "Raise-AT") {}
  PokerAction decide(const PokerView& v, Rng&) const override {
    if (v.street == Street::PreFlop)
      return hands::pair_or_broadway(v.hole) ? raise_to_or_call(v, 2 * v.previous_bet())
                                             : check_or_fold(v);
    return postflop_follow(v, 2);
  }
};

class RaiseAggressive final : public PokerStrategy {
 public:
  RaiseAggressive() : PokerStrategy(6, "Raise-Aggressive") {}
  PokerAction decide(const PokerView& v, Rng&) const override {
    if (v.street == Street::PreFlop)
      return hands::pair_or_broadway(v.hole) ? raise_to_or_call(v, 10 * v.previous_bet())
                                             : check_or_fold(v);
    return postflop_follow(v, 10);
  }
};

class CallTopPair final : public PokerStrategy {
 public:
  CallTopPair() : PokerStrategy(7, "Call-TopPair") {}
  PokerAction decide(const PokerView& v, Rng&) const override {
    if (v.street == Street::PreFlop)
      return (v.hole[0].rank >= 11 && v.hole[1].rank >= 11) ? call_or_check(v) : check_or_fold(v);
    return postflop_follow(v, 1);
  }
};

class CallFlop final : public PokerStrategy {
 public:
  CallFlop() : PokerStrategy(8, "Call-Flop") {}
  PokerAction decide(const PokerView& v, Rng&) const override {
    if (v.street == Street::PreFlop)
      return hands::pair_or_broadway(v.hole) ? call_or_check(v) : check_or_fold(v);
    const auto cards = v.visible_cards();
    return hands::three_of_a_kind_or_suit(cards) ? call_or_check(v) : check_or_fold(v);
  }
};

// Pre-flop and flop play shared by both background agents.
inline PokerAction background_early(const PokerView& v) {
  const double limit_fraction = hands::commitment_limit(v.hole);
  const int limit = static_cast<int>(limit_fraction * v.starting_stack);
  if (v.street == Street::Flop && hands::top_pair_or_better(v.hole, v.board))
    return PokerAction::all_in();
  if (v.to_call == 0) {
    // Tier 1 opens pre-flop with a double-size raise.
    if (v.street == Street::PreFlop && limit_fraction >= 1.0)
      return raise_to_or_call(v, 2 * v.previous_bet());
    return PokerAction::check();
  }
  const int committed_after_call = v.own_total_contribution + v.to_call;
  if (committed_after_call > limit) return PokerAction::fold();
  if (v.street == Street::PreFlop && limit_fraction >= 1.0 &&
      v.own_total_contribution + 2 * v.previous_bet() <= limit)
    return raise_to_or_call(v, 2 * v.previous_bet());
  return call_or_check(v);
}

class BackgroundV1 final : public PokerStrategy {
 public:
  BackgroundV1() : PokerStrategy(9, "Background V1") {}
  PokerAction decide(const PokerView& v, Rng&) const override {
    if (v.street == Street::PreFlop || v.street == Street::Flop) return background_early(v);
    return check_or_fold(v);
  }
};

// Turn: all-in with trips or better ("strong suits/values"); river: all-in
// with a straight or better. Otherwise calls up to twice the big blind.
class BackgroundV2 final : public PokerStrategy {
 public:
  BackgroundV2() : PokerStrategy(10, "Background V2") {}
  PokerAction decide(const PokerView& v, Rng&) const override {
    if (v.street == Street::PreFlop || v.street == Street::Flop) return background_early(v);
    const auto value = evaluate_standard(v.visible_cards());
    const HandCategory strong =
        v.street == Street::Turn ? HandCategory::Trips : HandCategory::Straight;
    if (value.category >= strong) return PokerAction::all_in();
    if (v.to_call == 0) return PokerAction::check();
    if (v.to_call <= 2 * v.big_blind) return call_or_check(v);
    return PokerAction::fold();
  }
};

}  // namespace agents

inline std::unique_ptr<PokerStrategy> make_poker_agent(int id) {
  using namespace agents;
  switch (id) {
    case 1: return std::make_unique<Raise>();
    case 2: return std::make_unique<Call>();
    case 3: return std::make_unique<RandomAgent>();
    case 4: return std::make_unique<CallAT>();
    case 5: return std::make_unique<RaiseAT>();
    case 6: return std::make_unique<RaiseAggressive>();
    case 7: return std::make_unique<CallTopPair>();
    case 8: return std::make_unique<CallFlop>();
    case 9: return std::make_unique<BackgroundV1>();
    case 10: return std::make_unique<BackgroundV2>();
    default:
      throw UnknownAgent("poker agent id " + std::to_string(id) + " is not in [1, 10]");
  }
}

inline const std::vector<std::string>& poker_agent_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (int id = 1; id <= kPokerAgentCount; ++id) out.push_back(make_poker_agent(id)->name());
    return out;
  }();
  return names;
}

inline int poker_agent_id(std::string_view name) {
  const auto& names = poker_agent_names();
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return static_cast<int>(k) + 1;
  throw UnknownAgent("no poker agent named '" + std::string(name) + "'");
}

}  // namespace novelty_arena::poker
