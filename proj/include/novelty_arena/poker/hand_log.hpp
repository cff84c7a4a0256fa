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

// Line-delimited JSON hand histories and their replay check.
//
// The first line is a header:
//   {"type":"header","agents":[a,b],"rules":{...},"table":{...},
//    "stack_model":"ledger"|"carry_forward"}
// Each further line is one hand:
//   {"type":"hand","hand_no":n,"seed":s,"dealer":d,"stacks":[x,y],
//    "hole_cards":[["As","Kd"],["7c","7h"]],"board":["2c",...],
//    "actions":[{"street":"preflop","player":0,"action":"raise","chips":15,
//                "coerced":false},...],
//    "deltas":[da,db]}
// `board` lists only the cards that were revealed.

#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "novelty_arena/core/errors.hpp"
#include "novelty_arena/poker/betting.hpp"
#include "novelty_arena/poker/engine.hpp"
#include "novelty_arena/poker/rules.hpp"

namespace novelty_arena::poker {

inline nlohmann::json cards_to_json(std::span<const Card> cards) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : cards) out.push_back(to_string(c));
  return out;
}

inline std::vector<Card> cards_from_json(const nlohmann::json& j) {
  std::vector<Card> out;
  for (const auto& c : j) out.push_back(parse_card(c.get<std::string>()));
  return out;
}

inline nlohmann::json table_to_json(const TableConfig& t) {
  return {{"starting_stack", t.starting_stack},
          {"small_blind", t.small_blind},
          {"big_blind", t.big_blind}};
}

inline TableConfig table_from_json(const nlohmann::json& j) {
  return {j.at("starting_stack").get<int>(), j.at("small_blind").get<int>(),
          j.at("big_blind").get<int>()};
}

inline nlohmann::json log_header(const std::string& agent_a, const std::string& agent_b,
                                 const RuleSet& rules, const TournamentConfig& config) {
  return {{"type", "header"},
          {"agents", {agent_a, agent_b}},
          {"rules", rules_to_json(rules)},
          {"table", table_to_json(config.table)},
          {"stack_model",
           config.stack_model == StackModel::Ledger ? "ledger" : "carry_forward"}};
}

inline nlohmann::json hand_to_json(int hand_no, std::array<int, 2> stacks,
                                   const HandOutcome& h) {
  nlohmann::json actions = nlohmann::json::array();
  for (const auto& a : h.trace)
    actions.push_back({{"street", std::string(to_string(a.street))},
                       {"player", a.player},
                       {"action", std::string(to_string(a.kind))},
                       {"chips", a.chips},
                       {"coerced", a.coerced}});
  return {{"type", "hand"},
          {"hand_no", hand_no},
          {"seed", h.seed},
          {"dealer", h.dealer},
          {"stacks", stacks},
          {"hole_cards", nlohmann::json::array({cards_to_json(h.hole[0]), cards_to_json(h.hole[1])})},
          {"board", cards_to_json(h.board)},
          {"actions", actions},
          {"deltas", h.deltas}};
}

// Plays a tournament and writes its log to `out`.
inline PokerTournamentResult poker_tournament_logged(const PokerStrategy& a,
                                                     const PokerStrategy& b, int hands,
                                                     const RuleSet& rules, std::uint64_t seed,
                                                     const TournamentConfig& config,
                                                     std::ostream& out) {
  out << log_header(a.name(), b.name(), rules, config).dump() << '\n';
  std::array<int, 2> stacks{config.table.starting_stack, config.table.starting_stack};
  auto observer = [&](int hand_no, const HandOutcome& h) {
    out << hand_to_json(hand_no, stacks, h).dump() << '\n';
    if (config.stack_model == StackModel::CarryForward) {
      stacks[0] += h.deltas[0];
      stacks[1] += h.deltas[1];
    }
  };
  return poker_tournament(a, b, hands, rules, seed, config, observer);
}

struct ReplayReport {
  int hands_checked = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

namespace detail {

inline Street parse_street(std::string_view s) {
  for (std::size_t k = 0; k < kStreetNames.size(); ++k)
    if (kStreetNames[k] == s) return static_cast<Street>(k);
  throw InvalidArgument("unknown street '" + std::string(s) + "'");
}

}  // namespace detail

// Re-deals every hand from its seed, re-executes the logged actions through
// the betting machine (which rejects illegal ones) and recomputes the
// deltas. Any difference from the log is reported.
inline ReplayReport replay_hand_log(std::istream& in) {
  ReplayReport report;
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("hand log is empty");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("hand log header: ") + e.what());
  }
  if (header.value("type", "") != "header") throw InvalidArgument("hand log lacks a header");
  const RuleSet rules = rules_from_json(header.at("rules"));
  const TableConfig table = table_from_json(header.at("table"));

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    try {
      const auto rec = nlohmann::json::parse(line);
      const auto seed = rec.at("seed").get<std::uint64_t>();
      const int dealer = rec.at("dealer").get<int>();
      const auto stacks = rec.at("stacks").get<std::array<int, 2>>();
      const Deal deal = deal_cards(rules, seed, dealer);

      const auto& jh = rec.at("hole_cards");
      for (std::size_t q = 0; q < 2; ++q) {
        const auto logged = cards_from_json(jh.at(q));
        if (logged.size() != 2 || logged[0] != deal.hole[q][0] || logged[1] != deal.hole[q][1])
          report.mismatches.push_back(where + "hole cards differ from the seeded deal");
      }
      const auto board = cards_from_json(rec.at("board"));
      for (std::size_t k = 0; k < board.size(); ++k)
        if (k >= deal.board.size() || board[k] != deal.board[k])
          report.mismatches.push_back(where + "board differs from the seeded deal");

      BettingMachine machine(stacks, dealer, table, deal.board);
      for (const auto& ja : rec.at("actions")) {
        const auto& s = machine.state();
        const auto street = detail::parse_street(ja.at("street").get<std::string>());
        const int player = ja.at("player").get<int>();
        const auto kind = parse_action_kind(ja.at("action").get<std::string>());
        const int chips = ja.at("chips").get<int>();
        if (s.finished() || street != s.street || player != s.to_act) {
          report.mismatches.push_back(where + "action out of turn");
          break;
        }
        PokerAction act{kind, 0};
        if (kind == ActionKind::Raise)
          act.amount = s.street_contrib[static_cast<std::size_t>(player)] + chips;
        const auto done = machine.apply(act, rules);
        if (done.chips != chips) report.mismatches.push_back(where + "chip count differs");
      }
      if (!machine.state().finished()) {
        report.mismatches.push_back(where + "hand does not reach an end");
        continue;
      }
      HandOutcome scratch;
      std::array<int, 2> final_stacks{};
      settle_showdown(machine.state(), deal, rules, final_stacks, scratch);
      const std::array<int, 2> deltas{final_stacks[0] - stacks[0], final_stacks[1] - stacks[1]};
      if (deltas != rec.at("deltas").get<std::array<int, 2>>())
        report.mismatches.push_back(where + "deltas differ from replay");
      if (deltas[0] + deltas[1] != 0) report.mismatches.push_back(where + "deltas not zero-sum");
      ++report.hands_checked;
    } catch (const nlohmann::json::exception& e) {
      report.mismatches.push_back(where + e.what());
    } catch (const Error& e) {
      report.mismatches.push_back(where + e.what());
    }
  }
  return report;
}

}  // namespace novelty_arena::poker
