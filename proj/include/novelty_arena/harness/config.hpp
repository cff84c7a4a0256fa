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

// Experiment configuration: JSON schema, defaults, validation and hashing.
//
// Recognized keys (everything but "domain" is optional):
//   domain                       "ipd" | "poker"
//   agents                       list of agent names (default: all)
//   novelties                    list of novelty ids (default: all built-ins)
//   master_seed                  unsigned 64-bit integer (default 1)
//   score_mode                   "win_ratio" | "payoff_share" (ipd),
//                                "cash_share" (poker)
//   independent_novelty_streams  bool (default false)
//   output_dir                   string (default "out")
//   jobs                         worker threads, >= 1 (default 1)
//   svg                          bool, also render figures (default false)
//   ipd only:   games_per_tournament (50), rounds_per_game (100),
//               novelty_file (path, relative to the config file),
//               user_novelties (inline list of {id, R, S, T, P, note})
//   poker only: hands_per_pairing (1000), stack_model ("ledger" |
//               "carry_forward"), starting_stack (1000), small_blind (5),
//               big_blind (10), mirrored_hands (false)

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "novelty_arena/arena.hpp"
#include "novelty_arena/core/errors.hpp"
#include "novelty_arena/core/matrix_io.hpp"
#include "novelty_arena/core/rng.hpp"
#include "novelty_arena/ipd/novelties.hpp"

namespace novelty_arena::harness {

inline constexpr std::string_view kEngineVersion = "1.0.0";

struct ExperimentConfig {
  Domain domain = Domain::Ipd;
  std::vector<std::string> agents;
  std::vector<int> novelties;
  std::uint64_t master_seed = 1;
  RunConfig run;
  std::vector<ipd::IpdNovelty> user_novelties;
  std::string output_dir = "out";
  unsigned jobs = 1;
  bool svg = false;

  ipd::NoveltyCatalog catalog() const {
    ipd::NoveltyCatalog c;
    for (const auto& n : user_novelties) c.add(n);
    return c;
  }
};

namespace detail {

inline const std::set<std::string>& common_keys() {
  static const std::set<std::string> k{"domain",      "agents",     "novelties",
                                       "master_seed", "score_mode", "independent_novelty_streams",
                                       "output_dir",  "jobs",       "svg"};
  return k;
}

inline const std::set<std::string>& ipd_keys() {
  static const std::set<std::string> k{"games_per_tournament", "rounds_per_game", "novelty_file",
                                       "user_novelties"};
  return k;
}

inline const std::set<std::string>& poker_keys() {
  static const std::set<std::string> k{"hands_per_pairing", "stack_model",  "starting_stack",
                                       "small_blind",       "big_blind",    "mirrored_hands"};
  return k;
}

template <typename T>
T get_field(const nlohmann::json& j, const std::string& key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(key, std::string("wrong type (") + e.what() + ")");
  }
}

inline int positive_int(const nlohmann::json& j, const std::string& key, int fallback) {
  const auto& v = j.contains(key) ? j.at(key) : nlohmann::json(fallback);
  if (!v.is_number_integer()) throw ValidationError(key, "must be an integer");
  const auto x = v.get<long long>();
  if (x < 1 || x > 100'000'000) throw ValidationError(key, "must be a positive integer");
  return static_cast<int>(x);
}

inline int line_of_byte(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace detail

// Validates a parsed configuration object. `base_dir` resolves novelty_file.
inline ExperimentConfig config_from_json(const nlohmann::json& j,
                                         const std::filesystem::path& base_dir = {}) {
  using detail::get_field;
  if (!j.is_object()) throw ValidationError("<root>", "config must be a JSON object");
  if (!j.contains("domain")) throw ValidationError("domain", "is required");
  const auto domain_name = get_field<std::string>(j, "domain", "");
  ExperimentConfig c;
  if (domain_name == "ipd")
    c.domain = Domain::Ipd;
  else if (domain_name == "poker")
    c.domain = Domain::Poker;
  else
    throw ValidationError("domain", "must be \"ipd\" or \"poker\"");

  const auto& own = c.domain == Domain::Ipd ? detail::ipd_keys() : detail::poker_keys();
  const auto& other = c.domain == Domain::Ipd ? detail::poker_keys() : detail::ipd_keys();
  for (const auto& [key, _] : j.items()) {
    if (detail::common_keys().count(key) || own.count(key)) continue;
    if (other.count(key))
      throw ValidationError(key, "does not apply to the " + domain_name + " domain");
    throw ValidationError(key, "unknown key");
  }

  c.run = RunConfig::for_domain(c.domain);
  const auto& registry = registered_agents(c.domain);
  c.agents = get_field(j, "agents", registry);
  if (c.agents.size() < 2) throw ValidationError("agents", "at least 2 agents are needed");
  std::set<std::string> seen;
  for (const auto& a : c.agents) {
    if (!agent_registered(c.domain, a)) throw ValidationError("agents", "unknown agent '" + a + "'");
    if (!seen.insert(a).second) throw ValidationError("agents", "duplicate agent '" + a + "'");
  }

  if (j.contains("master_seed") && !j["master_seed"].is_number_unsigned())
    throw ValidationError("master_seed", "must be a non-negative integer");
  c.master_seed = get_field<std::uint64_t>(j, "master_seed", 1);
  c.run.independent_novelty_streams = get_field(j, "independent_novelty_streams", false);
  c.output_dir = get_field<std::string>(j, "output_dir", "out");
  c.jobs = static_cast<unsigned>(detail::positive_int(j, "jobs", 1));
  c.svg = get_field(j, "svg", false);

  if (j.contains("score_mode")) {
    const auto mode = get_field<std::string>(j, "score_mode", "");
    if (c.domain == Domain::Ipd && mode == "win_ratio")
      c.run.score_mode = ScoreMode::WinRatio;
    else if (c.domain == Domain::Ipd && mode == "payoff_share")
      c.run.score_mode = ScoreMode::PayoffShare;
    else if (c.domain == Domain::Poker && mode == "cash_share")
      c.run.score_mode = ScoreMode::CashShare;
    else
      throw ValidationError("score_mode", "'" + mode + "' is not valid for " + domain_name);
  }

  if (c.domain == Domain::Ipd) {
    c.run.games_per_tournament = detail::positive_int(j, "games_per_tournament", 50);
    c.run.rounds_per_game = detail::positive_int(j, "rounds_per_game", 100);
    try {
      if (j.contains("user_novelties"))
        for (auto& n : ipd::parse_novelty_list(j["user_novelties"])) c.user_novelties.push_back(n);
      if (j.contains("novelty_file")) {
        const auto rel = get_field<std::string>(j, "novelty_file", "");
        const auto path = base_dir / rel;
        nlohmann::json list;
        try {
          list = nlohmann::json::parse(read_text_file(path.string()));
        } catch (const nlohmann::json::parse_error& e) {
          throw ValidationError("novelty_file", std::string("not valid JSON: ") + e.what());
        } catch (const ValidationError&) {
          throw;
        } catch (const Error& e) {
          throw ValidationError("novelty_file", e.what());
        }
        for (auto& n : ipd::parse_novelty_list(list)) c.user_novelties.push_back(n);
      }
      (void)c.catalog();  // id range, finiteness and duplicates
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError("user_novelties", e.what());
    }
  } else {
    c.run.hands_per_pairing = detail::positive_int(j, "hands_per_pairing", 1000);
    const auto model = get_field<std::string>(j, "stack_model", "ledger");
    if (model == "ledger")
      c.run.poker.stack_model = poker::StackModel::Ledger;
    else if (model == "carry_forward")
      c.run.poker.stack_model = poker::StackModel::CarryForward;
    else
      throw ValidationError("stack_model", "must be \"ledger\" or \"carry_forward\"");
    auto& t = c.run.poker.table;
    t.starting_stack = detail::positive_int(j, "starting_stack", 1000);
    t.small_blind = detail::positive_int(j, "small_blind", 5);
    t.big_blind = detail::positive_int(j, "big_blind", 10);
    if (t.small_blind > t.big_blind)
      throw ValidationError("small_blind", "must not exceed the big blind");
    if (t.big_blind >= t.starting_stack)
      throw ValidationError("big_blind", "must be below the starting stack");
    c.run.poker.mirrored = get_field(j, "mirrored_hands", false);
  }

  std::vector<int> all_ids;
  if (c.domain == Domain::Ipd) {
    all_ids = c.catalog().ids();
  } else {
    for (int id = 1; id <= poker::kPokerNoveltyCount; ++id) all_ids.push_back(id);
  }
  if (j.contains("novelties")) {
    c.novelties = get_field<std::vector<int>>(j, "novelties", {});
    if (c.novelties.empty()) throw ValidationError("novelties", "must not be empty");
    std::set<int> ids;
    for (int id : c.novelties) {
      if (std::find(all_ids.begin(), all_ids.end(), id) == all_ids.end())
        throw ValidationError("novelties", "unknown " + domain_name + " novelty " +
                                               std::to_string(id));
      if (!ids.insert(id).second)
        throw ValidationError("novelties", "duplicate novelty " + std::to_string(id));
    }
  } else {
    // Built-ins by default; user novelties run only when listed.
    for (int id : all_ids)
      if (id < ipd::kFirstUserNoveltyId) c.novelties.push_back(id);
  }
  return c;
}

inline ExperimentConfig parse_config(const std::string& text,
                                     const std::filesystem::path& base_dir = {}) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what(),
                     detail::line_of_byte(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  return config_from_json(j, base_dir);
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path.string());
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
  return parse_config(text, path.parent_path());
}

// Fully explicit form of a config. Every default is written out and user
// novelties are inlined, so the result alone re-creates the experiment.
// `jobs`, `output_dir` and `svg` are omitted: they do not affect numbers.
inline nlohmann::json canonical_config(const ExperimentConfig& c) {
  nlohmann::json j{{"domain", std::string(to_string(c.domain))},
                   {"agents", c.agents},
                   {"novelties", c.novelties},
                   {"master_seed", c.master_seed},
                   {"score_mode", std::string(to_string(c.run.score_mode))},
                   {"independent_novelty_streams", c.run.independent_novelty_streams}};
  if (c.domain == Domain::Ipd) {
    j["games_per_tournament"] = c.run.games_per_tournament;
    j["rounds_per_game"] = c.run.rounds_per_game;
    nlohmann::json users = nlohmann::json::array();
    for (const auto& n : c.user_novelties) users.push_back(ipd::novelty_to_json(n));
    j["user_novelties"] = users;
  } else {
    j["hands_per_pairing"] = c.run.hands_per_pairing;
    j["stack_model"] =
        c.run.poker.stack_model == poker::StackModel::Ledger ? "ledger" : "carry_forward";
    j["starting_stack"] = c.run.poker.table.starting_stack;
    j["small_blind"] = c.run.poker.table.small_blind;
    j["big_blind"] = c.run.poker.table.big_blind;
    j["mirrored_hands"] = c.run.poker.mirrored;
  }
  return j;
}

// FNV-1a 64 of the canonical config serialized with sorted keys, as 16 hex
// digits. Key order in the source file therefore does not matter.
inline std::string config_hash(const ExperimentConfig& c) {
  const auto h = fnv1a64(canonical_config(c).dump());
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) out[static_cast<std::size_t>(15 - k)] = kHex[(h >> (4 * k)) & 0xF];
  return out;
}

// Game environment for a novelty id, or the default game for nullopt.
inline GameEnvironment environment_for(const ExperimentConfig& c, std::optional<int> novelty) {
  if (c.domain == Domain::Ipd) {
    if (!novelty) return GameEnvironment::ipd_default();
    return GameEnvironment::ipd_with(c.catalog().at(*novelty).payoffs, novelty);
  }
  if (!novelty) return GameEnvironment::poker_with(poker::RuleSet{});
  return GameEnvironment::poker_with(poker::apply_poker_novelty(*novelty, c.master_seed));
}

inline std::string novelty_name(const ExperimentConfig& c, int novelty) {
  if (c.domain == Domain::Poker) return std::string(poker::kPokerNoveltyNames.at(
                                     static_cast<std::size_t>(novelty - 1)));
  const auto& n = c.catalog().at(novelty);
  return n.note.empty() ? "novelty_" + std::to_string(novelty) : n.note;
}

}  // namespace novelty_arena::harness
