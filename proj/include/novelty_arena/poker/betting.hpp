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

// Heads-up no-limit betting.
//
// Seat 0 and seat 1 are the two players; `dealer` holds the button, posts
// the small blind and acts first pre-flop, last afterwards. A Raise amount
// is the player's total contribution on the street after the raise. Chips
// are conserved: pot + both stacks is constant throughout a hand.

#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "novelty_arena/core/errors.hpp"
#include "novelty_arena/poker/cards.hpp"
#include "novelty_arena/poker/rules.hpp"

namespace novelty_arena::poker {

struct TableConfig {
  int starting_stack = 1000;
  int small_blind = 5;
  int big_blind = 10;
};

struct PokerAction {
  ActionKind kind = ActionKind::Fold;
  int amount = 0;  // Raise only: total street contribution after raising

  static PokerAction fold() { return {ActionKind::Fold, 0}; }
  static PokerAction check() { return {ActionKind::Check, 0}; }
  static PokerAction call() { return {ActionKind::Call, 0}; }
  static PokerAction raise_to(int total) { return {ActionKind::Raise, total}; }
  static PokerAction all_in() { return {ActionKind::AllIn, 0}; }
};

// One executed action. `chips` is what the player moved into the pot.
struct ActionRecord {
  Street street = Street::PreFlop;
  int player = 0;
  ActionKind kind = ActionKind::Fold;
  int chips = 0;
  bool coerced = false;

  friend bool operator==(const ActionRecord&, const ActionRecord&) = default;
};

struct LegalActions {
  ActionSet kinds;
  int call_amount = 0;   // chips a Call moves (may be 0 or the whole stack)
  int min_raise_to = 0;  // Raise range, inclusive
  int max_raise_to = 0;
  int all_in_amount = 0;  // chips an AllIn moves

  bool contains(ActionKind k) const { return kinds.contains(k); }
  bool allows(const PokerAction& a) const {
    if (!kinds.contains(a.kind)) return false;
    if (a.kind == ActionKind::Raise) return a.amount >= min_raise_to && a.amount <= max_raise_to;
    return true;
  }
};

struct BettingState {
  Street street = Street::PreFlop;
  int pot = 0;
  std::array<int, 2> stacks{};
  std::array<int, 2> street_contrib{};
  std::array<int, 2> total_contrib{};
  int current_bet = 0;  // largest street contribution
  int last_raise = 0;   // size of the last full raise on this street
  int to_act = 0;
  int dealer = 0;
  int big_blind = 10;
  std::vector<Card> board;
  std::optional<int> folded;
  std::array<bool, 2> all_in{};
  std::array<bool, 2> acted{};

  int to_call(int p) const { return current_bet - street_contrib[static_cast<std::size_t>(p)]; }
  int chips_in_play() const { return pot + stacks[0] + stacks[1]; }
  bool finished() const { return folded.has_value() || street == Street::Showdown; }
};

inline std::size_t board_size_for(Street s) {
  switch (s) {
    case Street::PreFlop: return 0;
    case Street::Flop: return 3;
    case Street::Turn: return 4;
    default: return 5;
  }
}

// Standard heads-up legality intersected with the rule set's per-street
// action constraint. Fold is always legal.
inline LegalActions legal_actions(const BettingState& s, const RuleSet& rules) {
  if (s.finished()) throw InvalidArgument("legal_actions on a finished hand");
  const auto p = static_cast<std::size_t>(s.to_act);
  const auto o = 1 - p;
  const int stack = s.stacks[p];
  const int to_call = s.to_call(s.to_act);
  const bool opp_all_in = s.all_in[o];

  LegalActions base;
  base.kinds.insert(ActionKind::Fold);
  if (to_call == 0) base.kinds.insert(ActionKind::Check);
  if (to_call > 0 && to_call < stack) {
    base.kinds.insert(ActionKind::Call);
    base.call_amount = to_call;
  }
  if (to_call >= stack && stack > 0 && to_call > 0) {
    base.kinds.insert(ActionKind::AllIn);
    base.all_in_amount = stack;
  }
  if (!opp_all_in && stack > to_call) {
    base.min_raise_to = s.current_bet + std::max(s.last_raise, s.big_blind);
    base.max_raise_to = s.street_contrib[p] + stack - 1;  // leaving at least one chip
    if (base.max_raise_to >= base.min_raise_to) base.kinds.insert(ActionKind::Raise);
    base.kinds.insert(ActionKind::AllIn);
    base.all_in_amount = stack;
  }

  const ActionSet allowed = rules.actions_on(s.street);
  LegalActions out = base;
  out.kinds = {ActionKind::Fold};
  for (auto k : {ActionKind::Check, ActionKind::Call, ActionKind::Raise, ActionKind::AllIn})
    if (base.kinds.contains(k) && allowed.contains(k)) out.kinds.insert(k);

  // A constraint that names Call but not Check still lets a player stay in
  // when nothing is owed, and a short stack can still call for everything.
  if (allowed.contains(ActionKind::Call) && !allowed.contains(ActionKind::Check) && to_call == 0) {
    out.kinds.insert(ActionKind::Call);
    out.call_amount = 0;
  }
  if (allowed.contains(ActionKind::Call) && !allowed.contains(ActionKind::AllIn) &&
      to_call >= stack && to_call > 0 && stack > 0) {
    out.kinds.insert(ActionKind::Call);
    out.call_amount = stack;
  }
  // A constraint that names AllIn but not Call lets a player answer an
  // opponent's all-in by committing what is owed.
  if (allowed.contains(ActionKind::AllIn) && !allowed.contains(ActionKind::Call) && opp_all_in &&
      to_call > 0 && to_call < stack) {
    out.kinds.insert(ActionKind::AllIn);
    out.all_in_amount = to_call;
  }
  return out;
}

namespace detail {

inline bool round_complete(const BettingState& s) {
  for (std::size_t q = 0; q < 2; ++q) {
    if (s.all_in[q]) continue;
    if (!s.acted[q] || s.street_contrib[q] != s.current_bet) return false;
  }
  return true;
}

}  // namespace detail

// Drives one hand's betting. The caller supplies the board cards as streets
// open; the machine never shuffles or deals.
class BettingMachine {
 public:
  // Posts the blinds. Both stacks must cover the big blind.
  BettingMachine(std::array<int, 2> stacks, int dealer, const TableConfig& table,
                 std::vector<Card> full_board)
      : full_board_(std::move(full_board)) {
    if (dealer != 0 && dealer != 1) throw InvalidArgument("dealer must be 0 or 1");
    if (stacks[0] < table.big_blind || stacks[1] < table.big_blind)
      throw InvalidArgument("both stacks must cover the big blind");
    if (full_board_.size() != 5) throw InvalidArgument("a hand needs five board cards");
    s_.stacks = stacks;
    s_.dealer = dealer;
    s_.big_blind = table.big_blind;
    const auto d = static_cast<std::size_t>(dealer);
    post(d, table.small_blind);
    post(1 - d, table.big_blind);
    s_.current_bet = std::max(s_.street_contrib[0], s_.street_contrib[1]);
    s_.last_raise = table.big_blind;
    s_.to_act = dealer;
    settle_if_no_betting();
  }

  const BettingState& state() const { return s_; }

  // Executes a legal action and returns what was recorded. Throws on an
  // illegal action; coercion is the caller's business.
  ActionRecord apply(const PokerAction& a, const RuleSet& rules) {
    const auto legal = legal_actions(s_, rules);
    if (!legal.allows(a))
      throw InvalidArgument("illegal action " + std::string(to_string(a.kind)) + " on " +
                            std::string(to_string(s_.street)));
    const auto p = static_cast<std::size_t>(s_.to_act);
    const auto o = 1 - p;
    ActionRecord rec{s_.street, s_.to_act, a.kind, 0, false};
    switch (a.kind) {
      case ActionKind::Fold:
        s_.folded = s_.to_act;
        break;
      case ActionKind::Check:
        break;
      case ActionKind::Call:
        rec.chips = legal.call_amount;
        post(p, rec.chips);
        break;
      case ActionKind::Raise: {
        rec.chips = a.amount - s_.street_contrib[p];
        const int raise_size = a.amount - s_.current_bet;
        post(p, rec.chips);
        s_.last_raise = std::max(s_.last_raise, raise_size);
        s_.current_bet = a.amount;
        s_.acted[o] = false;
        break;
      }
      case ActionKind::AllIn: {
        rec.chips = legal.all_in_amount;
        post(p, rec.chips);
        if (s_.street_contrib[p] > s_.current_bet) {
          const int raise_size = s_.street_contrib[p] - s_.current_bet;
          if (raise_size >= s_.last_raise) s_.last_raise = raise_size;
          s_.current_bet = s_.street_contrib[p];
          s_.acted[o] = false;
        }
        break;
      }
    }
    s_.acted[p] = true;
    if (s_.folded) return rec;
    if (detail::round_complete(s_)) {
      next_street();
    } else {
      s_.to_act = static_cast<int>(o);
    }
    return rec;
  }

  // Returns uncalled chips once the hand is over and nothing else can
  // happen. Safe to call repeatedly.
  void refund_uncalled() {
    if (s_.folded) return;
    const int matched = std::min(s_.total_contrib[0], s_.total_contrib[1]);
    for (std::size_t q = 0; q < 2; ++q) {
      const int excess = s_.total_contrib[q] - matched;
      if (excess > 0) {
        s_.total_contrib[q] -= excess;
        s_.stacks[q] += excess;
        s_.pot -= excess;
      }
    }
  }

 private:
  void post(std::size_t p, int chips) {
    chips = std::min(chips, s_.stacks[p]);
    s_.stacks[p] -= chips;
    s_.street_contrib[p] += chips;
    s_.total_contrib[p] += chips;
    s_.pot += chips;
    if (s_.stacks[p] == 0) s_.all_in[p] = true;
  }

  void open_street(Street st) {
    s_.street = st;
    s_.board.assign(full_board_.begin(),
                    full_board_.begin() + static_cast<std::ptrdiff_t>(board_size_for(st)));
    s_.street_contrib = {0, 0};
    s_.current_bet = 0;
    s_.last_raise = s_.big_blind;
    s_.acted = {false, false};
    s_.to_act = 1 - s_.dealer;
  }

  void next_street() {
    open_street(static_cast<Street>(static_cast<int>(s_.street) + 1));
    settle_if_no_betting();
  }

  // With at most one player able to bet there is nothing to decide: run the
  // board out to showdown.
  void settle_if_no_betting() {
    while (!s_.finished()) {
      const bool someone_all_in = s_.all_in[0] || s_.all_in[1];
      if (!someone_all_in) return;
      // A player still facing a bet must answer it first.
      const auto p = static_cast<std::size_t>(s_.to_act);
      if (!s_.all_in[p] && s_.street_contrib[p] < s_.current_bet) return;
      if (!s_.all_in[1 - p] && s_.street_contrib[1 - p] < s_.current_bet) {
        s_.to_act = static_cast<int>(1 - p);
        return;
      }
      if (s_.street == Street::River) {
        open_street(Street::Showdown);
      } else {
        open_street(static_cast<Street>(static_cast<int>(s_.street) + 1));
      }
    }
    if (s_.street == Street::Showdown) refund_uncalled();
  }

  BettingState s_;
  std::vector<Card> full_board_;
};

}  // namespace novelty_arena::poker
