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

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "novelty_arena/core/errors.hpp"
#include "novelty_arena/core/rng.hpp"
#include "novelty_arena/ipd/payoff.hpp"
#include "novelty_arena/ipd/strategies.hpp"

namespace novelty_arena::ipd {

struct IpdHistory {
  // (player a's move, player b's move) per round.
  std::vector<std::pair<IpdAction, IpdAction>> rounds;
  double cumulative_a = 0.0;
  double cumulative_b = 0.0;

  std::size_t size() const { return rounds.size(); }
};

struct IpdGameResult {
  double cumulative_a = 0.0;
  double cumulative_b = 0.0;
  IpdHistory history;
};

// Plays one game of `rounds` simultaneous moves. Both strategies are reset
// first; strategy a draws from stream 0 of `seed`, strategy b from stream 1.
inline IpdGameResult play_ipd_game(IpdStrategy& a, IpdStrategy& b, const PayoffMatrix& m,
                                   int rounds, std::uint64_t seed) {
  if (rounds < 1) throw InvalidArgument("an IPD game needs at least one round");
  a.reset(derive_seed(seed, 0));
  b.reset(derive_seed(seed, 1));

  std::vector<IpdAction> moves_a, moves_b;
  moves_a.reserve(static_cast<std::size_t>(rounds));
  moves_b.reserve(static_cast<std::size_t>(rounds));

  IpdGameResult out;
  out.history.rounds.reserve(static_cast<std::size_t>(rounds));
  for (int t = 0; t < rounds; ++t) {
    const IpdAction xa = a.decide({moves_a, moves_b, m});
    const IpdAction xb = b.decide({moves_b, moves_a, m});
    const auto [pa, pb] = payoff(xa, xb, m);
    out.history.cumulative_a += pa;
    out.history.cumulative_b += pb;
    out.history.rounds.emplace_back(xa, xb);
    moves_a.push_back(xa);
    moves_b.push_back(xb);
  }
  out.cumulative_a = out.history.cumulative_a;
  out.cumulative_b = out.history.cumulative_b;
  return out;
}

// Win ratio over games: strictly larger cumulative payoff wins, a tie is
// worth half a win to each side.
inline std::pair<double, double> ipd_tournament_score(
    std::span<const std::pair<double, double>> outcomes) {
  if (outcomes.empty()) throw InvalidArgument("tournament score needs at least one game");
  double points = 0.0;
  for (const auto& [a, b] : outcomes) {
    if (a > b)
      points += 1.0;
    else if (a == b)
      points += 0.5;
  }
  const double first = points / static_cast<double>(outcomes.size());
  return {first, 1.0 - first};
}

// Share of the summed payoff over all games. Equal totals (including 0, 0)
// score 0.5 each.
inline std::pair<double, double> ipd_payoff_share(
    std::span<const std::pair<double, double>> outcomes) {
  if (outcomes.empty()) throw InvalidArgument("tournament score needs at least one game");
  double a = 0.0, b = 0.0;
  for (const auto& o : outcomes) {
    a += o.first;
    b += o.second;
  }
  if (a == b) return {0.5, 0.5};
  const double first = a / (a + b);
  return {first, 1.0 - first};
}

}  // namespace novelty_arena::ipd
