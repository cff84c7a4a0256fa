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

// Domain-independent entry points: one pairing, one agent matrix.
//
// A pairing is always played with the two agents in name order (the
// lexicographically smaller name takes seat a) and the scores are mapped
// back afterwards. Together with name-based seeds this makes the matrix
// equivariant under any reordering of the agent list.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "novelty_arena/core/agent_matrix.hpp"
#include "novelty_arena/core/errors.hpp"
#include "novelty_arena/core/rng.hpp"
#include "novelty_arena/core/tournament.hpp"
#include "novelty_arena/ipd/game.hpp"
#include "novelty_arena/ipd/novelties.hpp"
#include "novelty_arena/ipd/payoff.hpp"
#include "novelty_arena/ipd/strategies.hpp"
#include "novelty_arena/poker/engine.hpp"
#include "novelty_arena/poker/rules.hpp"
#include "novelty_arena/poker/strategies.hpp"

namespace novelty_arena {

enum class Domain { Ipd, Poker };

inline std::string_view to_string(Domain d) { return d == Domain::Ipd ? "ipd" : "poker"; }

enum class ScoreMode { WinRatio, PayoffShare, CashShare };

inline std::string_view to_string(ScoreMode m) {
  switch (m) {
    case ScoreMode::WinRatio: return "win_ratio";
    case ScoreMode::PayoffShare: return "payoff_share";
    case ScoreMode::CashShare: return "cash_share";
  }
  return "?";
}

struct GameEnvironment {
  std::variant<ipd::PayoffMatrix, poker::RuleSet> rules;
  std::optional<int> novelty_id;

  static GameEnvironment ipd_default() { return {ipd::kDefaultPayoffs, std::nullopt}; }
  static GameEnvironment ipd_with(const ipd::PayoffMatrix& m, std::optional<int> novelty) {
    return {m, novelty};
  }
  static GameEnvironment poker_with(const poker::RuleSet& r) {
    return {r, r.novelty_id ? std::optional<int>(r.novelty_id) : std::nullopt};
  }

  Domain domain() const {
    return std::holds_alternative<ipd::PayoffMatrix>(rules) ? Domain::Ipd : Domain::Poker;
  }
};

struct RunConfig {
  Domain domain = Domain::Ipd;
  ScoreMode score_mode = ScoreMode::WinRatio;
  // IPD
  int games_per_tournament = 50;
  int rounds_per_game = 100;
  // Poker
  int hands_per_pairing = 1000;
  poker::TournamentConfig poker;
  // When set, the novelty id enters every pairing seed, so each condition
  // draws its own random streams instead of sharing them with the default
  // matrix.
  bool independent_novelty_streams = false;

  static RunConfig for_domain(Domain d) {
    RunConfig c;
    c.domain = d;
    c.score_mode = d == Domain::Ipd ? ScoreMode::WinRatio : ScoreMode::CashShare;
    return c;
  }
};

inline void check_run_config(const RunConfig& config, const GameEnvironment& env) {
  if (config.domain != env.domain())
    throw DomainMismatch("run config is for " + std::string(to_string(config.domain)) +
                         " but the environment is " + std::string(to_string(env.domain())));
  if (config.domain == Domain::Ipd) {
    if (config.score_mode == ScoreMode::CashShare)
      throw DomainMismatch("cash share scoring applies to poker only");
    if (config.games_per_tournament < 1 || config.rounds_per_game < 1)
      throw InvalidArgument("IPD tournaments need at least one game of one round");
  } else {
    if (config.score_mode != ScoreMode::CashShare)
      throw DomainMismatch("poker pairings are scored by cash share");
    if (config.hands_per_pairing < 1) throw InvalidArgument("poker pairings need at least one hand");
  }
}

inline bool agent_registered(Domain d, const std::string& name) {
  const auto& names = d == Domain::Ipd ? ipd::ipd_agent_names() : poker::poker_agent_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

inline const std::vector<std::string>& registered_agents(Domain d) {
  return d == Domain::Ipd ? ipd::ipd_agent_names() : poker::poker_agent_names();
}

namespace detail {

// Plays the pairing with `first` in seat a. Returns (score_first, raw totals).
inline std::pair<double, std::pair<double, double>> play_ordered(const std::string& first,
                                                                 const std::string& second,
                                                                 const GameEnvironment& env,
                                                                 const RunConfig& config,
                                                                 std::uint64_t seed) {
  if (const auto* m = std::get_if<ipd::PayoffMatrix>(&env.rules)) {
    auto a = ipd::make_ipd_agent(ipd::ipd_agent_id(first));
    auto b = ipd::make_ipd_agent(ipd::ipd_agent_id(second));
    std::vector<std::pair<double, double>> games;
    games.reserve(static_cast<std::size_t>(config.games_per_tournament));
    double ta = 0.0, tb = 0.0;
    for (int g = 0; g < config.games_per_tournament; ++g) {
      const auto r = ipd::play_ipd_game(*a, *b, *m, config.rounds_per_game,
                                        derive_seed(seed, static_cast<std::uint64_t>(g)));
      games.emplace_back(r.cumulative_a, r.cumulative_b);
      ta += r.cumulative_a;
      tb += r.cumulative_b;
    }
    const auto scores = config.score_mode == ScoreMode::WinRatio ? ipd::ipd_tournament_score(games)
                                                                 : ipd::ipd_payoff_share(games);
    return {scores.first, {ta, tb}};
  }
  const auto& rules = std::get<poker::RuleSet>(env.rules);
  const auto a = poker::make_poker_agent(poker::poker_agent_id(first));
  const auto b = poker::make_poker_agent(poker::poker_agent_id(second));
  const auto r = poker::poker_tournament(*a, *b, config.hands_per_pairing, rules, seed, config.poker);
  return {r.share_a, {static_cast<double>(r.net_a), -static_cast<double>(r.net_a)}};
}

}  // namespace detail

// One tournament between two registered agents.
inline MatchRecord run_pairing(const AgentId& agent_a, const AgentId& agent_b,
                               const GameEnvironment& env, const RunConfig& config,
                               std::uint64_t seed) {
  check_run_config(config, env);
  for (const auto* id : {&agent_a, &agent_b})
    if (!agent_registered(env.domain(), id->name))
      throw UnknownAgent("no " + std::string(to_string(env.domain())) + " agent named '" +
                         id->name + "'");
  // Two ids may name the same strategy (self-play); an id cannot meet itself.
  if (agent_a == agent_b) throw InvalidArgument("an agent cannot be paired with itself");

  const bool swapped = agent_b.name < agent_a.name;
  const auto& first = swapped ? agent_b.name : agent_a.name;
  const auto& second = swapped ? agent_a.name : agent_b.name;
  auto [score_first, totals] = detail::play_ordered(first, second, env, config, seed);

  MatchRecord rec;
  rec.agent_a = agent_a;
  rec.agent_b = agent_b;
  const auto [s_first, s_second] = complementary_scores(score_first);
  rec.score_a = swapped ? s_second : s_first;
  rec.score_b = swapped ? s_first : s_second;
  rec.raw_totals = swapped ? std::pair{totals.second, totals.first} : totals;
  rec.seed = seed;
  rec.novelty_id = env.novelty_id;
  return rec;
}

inline std::string stream_tag(const GameEnvironment& env, const RunConfig& config) {
  if (!config.independent_novelty_streams || !env.novelty_id) return {};
  return std::to_string(*env.novelty_id);
}

// Fills an agent matrix with one tournament per unordered pair. `jobs`
// bounds the number of worker threads; the result does not depend on it.
inline AgentMatrix build_agent_matrix(const std::vector<AgentId>& agents,
                                      const GameEnvironment& env, const RunConfig& config,
                                      std::uint64_t master_seed, unsigned jobs = 1,
                                      std::vector<MatchRecord>* records = nullptr) {
  check_run_config(config, env);
  for (const auto& id : agents)
    if (!agent_registered(env.domain(), id.name))
      throw UnknownAgent("no " + std::string(to_string(env.domain())) + " agent named '" +
                         id.name + "'");
  const auto tag = stream_tag(env, config);
  return build_matrix_from_pairings(
      agents,
      [&](std::size_t i, std::size_t j) {
        const auto seed = pairing_seed(master_seed, agents[i].name, agents[j].name, tag);
        return run_pairing(agents[i], agents[j], env, config, seed);
      },
      jobs, records);
}

}  // namespace novelty_arena
