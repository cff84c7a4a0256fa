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

// Dealing, hand play and heads-up tournaments.
//
// Random streams of one hand, all derived from the hand seed:
//   stream 0 shuffles the (filtered) deck;
//   stream 1 feeds the dealer's strategy, stream 2 the other seat's.
// The dealer receives deck[0..1], the other seat deck[2..3], and the board
// is deck[4..8]. Tying streams and cards to the button rather than to a
// named player is what makes mirrored hand pairs exact mirrors.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "novelty_arena/core/errors.hpp"
#include "novelty_arena/core/rng.hpp"
#include "novelty_arena/poker/betting.hpp"
#include "novelty_arena/poker/evaluator.hpp"
#include "novelty_arena/poker/rules.hpp"
#include "novelty_arena/poker/strategies.hpp"

namespace novelty_arena::poker {

enum class StackModel { Ledger, CarryForward };

struct TournamentConfig {
  TableConfig table;
  StackModel stack_model = StackModel::Ledger;
  // Hands 2k and 2k+1 share a deal with the button swapped.
  bool mirrored = false;
};

struct HandOutcome {
  std::uint64_t seed = 0;
  int dealer = 0;
  std::array<std::array<Card, 2>, 2> hole{};  // as dealt, per seat
  std::vector<Card> board;                    // cards actually revealed
  std::vector<ActionRecord> trace;
  std::array<int, 2> deltas{};
  std::optional<int> folded_by;
  bool showdown = false;
  bool exchanged = false;
  std::array<HandValue, 2> values{};  // showdown values, after any exchange
  int winner = -1;                    // -1: split pot or no showdown winner
  std::array<int, 2> coercions{};
};

// Deals the hand for `seed`. Exposed so a replay can reproduce the cards.
struct Deal {
  std::array<std::array<Card, 2>, 2> hole{};
  std::vector<Card> board;
};

inline Deal deal_cards(const RuleSet& rules, std::uint64_t seed, int dealer) {
  auto deck = rules.deck();
  Rng rng(derive_seed(seed, 0));
  rng.shuffle(std::span<Card>(deck));
  Deal d;
  const auto dl = static_cast<std::size_t>(dealer);
  d.hole[dl] = {deck[0], deck[1]};
  d.hole[1 - dl] = {deck[2], deck[3]};
  d.board.assign(deck.begin() + 4, deck.begin() + 9);
  return d;
}

// Awards the pot of a finished hand. Returns (values, winner).
inline void settle_showdown(const BettingState& s, const Deal& deal, const RuleSet& rules,
                            std::array<int, 2>& final_stacks, HandOutcome& out) {
  final_stacks = s.stacks;
  if (s.folded) {
    final_stacks[static_cast<std::size_t>(1 - *s.folded)] += s.pot;
    out.folded_by = s.folded;
    return;
  }
  out.showdown = true;
  auto hole = deal.hole;
  if (rules.exchange_hands) {
    std::swap(hole[0], hole[1]);
    out.exchanged = true;
  }
  for (std::size_t q = 0; q < 2; ++q) {
    std::array<Card, 7> cards{hole[q][0], hole[q][1]};
    std::copy(deal.board.begin(), deal.board.end(), cards.begin() + 2);
    out.values[q] = evaluate_hand(cards, rules);
  }
  const int cmp = compare_hands(out.values[0], out.values[1], rules);
  if (cmp != 0) {
    out.winner = cmp > 0 ? 0 : 1;
    final_stacks[static_cast<std::size_t>(out.winner)] += s.pot;
  } else {
    const int half = s.pot / 2;
    const auto non_dealer = static_cast<std::size_t>(1 - s.dealer);
    final_stacks[0] += half;
    final_stacks[1] += half;
    final_stacks[non_dealer] += s.pot - 2 * half;  // odd chip
  }
}

// Plays one hand between seat 0 (`a`) and seat 1 (`b`).
inline HandOutcome play_hand(const PokerStrategy& a, const PokerStrategy& b,
                             std::array<int, 2> stacks, const RuleSet& rules, std::uint64_t seed,
                             const TableConfig& table = {}, int dealer = 0) {
  HandOutcome out;
  out.seed = seed;
  out.dealer = dealer;
  const Deal deal = deal_cards(rules, seed, dealer);
  out.hole = deal.hole;

  const std::array<const PokerStrategy*, 2> seats{&a, &b};
  std::array<Rng, 2> rngs{Rng(0), Rng(0)};
  rngs[static_cast<std::size_t>(dealer)] = Rng(derive_seed(seed, 1));
  rngs[static_cast<std::size_t>(1 - dealer)] = Rng(derive_seed(seed, 2));

  BettingMachine machine(stacks, dealer, table, deal.board);
  const int total = machine.state().chips_in_play();
  while (!machine.state().finished()) {
    const auto& s = machine.state();
    const int p = s.to_act;
    const auto pu = static_cast<std::size_t>(p);
    const auto legal = legal_actions(s, rules);
    const PokerView view{deal.hole[pu],
                         s.board,
                         s.street,
                         legal,
                         s.to_call(p),
                         s.current_bet,
                         s.stacks[pu],
                         s.stacks[1 - pu],
                         s.pot,
                         s.street_contrib[pu],
                         s.total_contrib[pu],
                         s.all_in[1 - pu],
                         table.big_blind,
                         s.stacks[pu] + s.total_contrib[pu],
                         rules};
    PokerAction action = seats[pu]->decide(view, rngs[pu]);
    bool coerced = false;
    if (!legal.allows(action)) {
      if (action.kind == ActionKind::Raise && legal.contains(ActionKind::AllIn) &&
          action.amount == s.street_contrib[pu] + s.stacks[pu]) {
        action = PokerAction::all_in();
      } else if (legal.contains(ActionKind::Check)) {
        action = PokerAction::check(), coerced = true;
      } else if (legal.contains(ActionKind::Call)) {
        action = PokerAction::call(), coerced = true;
      } else {
        action = PokerAction::fold(), coerced = true;
      }
    }
    auto rec = machine.apply(action, rules);
    rec.coerced = coerced;
    out.coercions[pu] += coerced;
    out.trace.push_back(rec);
    if (machine.state().chips_in_play() != total)
      throw Error("chip conservation violated during betting");
  }

  const auto& s = machine.state();
  out.board = s.board;
  std::array<int, 2> final_stacks{};
  settle_showdown(s, deal, rules, final_stacks, out);
  out.deltas = {final_stacks[0] - stacks[0], final_stacks[1] - stacks[1]};
  if (out.deltas[0] + out.deltas[1] != 0) throw Error("hand deltas do not sum to zero");
  return out;
}

struct PokerTournamentResult {
  double share_a = 0.5;
  double share_b = 0.5;
  long long net_a = 0;  // chips won by a over the tournament
  int hands_played = 0;
  std::array<int, 2> coercions{};
};

using HandObserver = std::function<void(int hand_no, const HandOutcome&)>;

inline std::uint64_t hand_seed(std::uint64_t tournament_seed, int hand_no, bool mirrored) {
  const int slot = mirrored ? hand_no / 2 : hand_no;
  return derive_seed(tournament_seed, static_cast<std::uint64_t>(slot));
}

// Plays `hands` hands with the button alternating (a deals the even hands).
//
// Ledger model: both stacks reset to the starting stack every hand and net
// chips accumulate; a's share is (hands * stack + net) / (hands * 2 * stack).
// Carry-forward model: stacks carry over and play stops early once either
// player cannot cover the big blind; shares are the final stacks over the
// table total.
inline PokerTournamentResult poker_tournament(const PokerStrategy& a, const PokerStrategy& b,
                                              int hands, const RuleSet& rules,
                                              std::uint64_t seed,
                                              const TournamentConfig& config = {},
                                              const HandObserver& observer = {}) {
  if (hands < 1) throw InvalidArgument("a poker tournament needs at least one hand");
  const auto& table = config.table;
  PokerTournamentResult res;
  std::array<int, 2> stacks{table.starting_stack, table.starting_stack};
  for (int h = 0; h < hands; ++h) {
    if (config.stack_model == StackModel::CarryForward &&
        (stacks[0] < table.big_blind || stacks[1] < table.big_blind))
      break;
    const std::array<int, 2> start =
        config.stack_model == StackModel::Ledger
            ? std::array<int, 2>{table.starting_stack, table.starting_stack}
            : stacks;
    const auto outcome = play_hand(a, b, start, rules, hand_seed(seed, h, config.mirrored), table,
                                   h % 2);
    res.net_a += outcome.deltas[0];
    res.coercions[0] += outcome.coercions[0];
    res.coercions[1] += outcome.coercions[1];
    if (config.stack_model == StackModel::CarryForward) {
      stacks[0] += outcome.deltas[0];
      stacks[1] += outcome.deltas[1];
    }
    ++res.hands_played;
    if (observer) observer(h, outcome);
  }
  double first = 0.5;
  if (config.stack_model == StackModel::Ledger) {
    const double stake = static_cast<double>(res.hands_played) * table.starting_stack;
    first = (stake + static_cast<double>(res.net_a)) / (2.0 * stake);
  } else {
    first = static_cast<double>(stacks[0]) / (2.0 * table.starting_stack);
  }
  res.share_a = first;
  res.share_b = 1.0 - first;
  return res;
}

}  // namespace novelty_arena::poker
