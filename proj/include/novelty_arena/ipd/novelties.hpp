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

// Built-in payoff novelties 1-20 and user-defined novelties (ids >= 100).

#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "novelty_arena/core/errors.hpp"
#include "novelty_arena/ipd/payoff.hpp"

namespace novelty_arena::ipd {

inline constexpr int kBuiltinNoveltyCount = 20;
inline constexpr int kFirstUserNoveltyId = 100;

struct IpdNovelty {
  int id = 0;
  PayoffMatrix payoffs;
  std::string note;
};

inline const std::array<IpdNovelty, kBuiltinNoveltyCount>& builtin_novelties() {
  static const std::array<IpdNovelty, kBuiltinNoveltyCount> table{{
      {1, {600, 0, 1000, 100}, "All values multiplied by 100"},
      {2, {60, 0, 100, 10}, "All values multiplied by 10"},
      {3, {60, 0, 1000, 6}, "T>R>P>S preserved, values changed"},
      {4, {1, 0, 10, 6}, "T>P>R>S"},
      {5, {1, 10, 0, 6}, "T<R<P<S"},
      {6, {6, 10, 0, 1}, "T<P<R<S"},
      {7, {6000, 20, 1, 10000}, "T<S<R<P"},
      {8, {60, 20000, 1, 100}, "T<R<P<S"},
      {9, {60, 20000, 20000, 60}, "R=P<T=S"},
      {10, {60000, 20, 20, 60000}, "R=P, T=S and P>>T"},
      {11, {10, 1, 1, 10}, "R=P>T=S"},
      {12, {100, 100, 100, 100}, "R=P=T=S"},
      {13, {10, 10, 1000, 1000}, "R=S and T=P"},
      {14, {10, 1000, 10, 1000}, "R=T and S=P"},
      {15, {1000, 1000, 10, 1000}, "R=S=P>T"},
      {16, {1000, 10, 1000, 1000}, "R=T=P>S"},
      {17, {10, 1000, 1000, 1000}, "S=P=T>R"},
      {18, {1000, 1000, 1000, 10}, "R=S=T>P"},
      {19, {8520, 0, 1011, 102}, "R>T>P>S"},
      {20, {6, 15200, 1110, 1}, "S>T>R>P"},
  }};
  return table;
}

inline PayoffMatrix novelty_payoffs(int id) {
  if (id < 1 || id > kBuiltinNoveltyCount)
    throw UnknownNovelty("IPD novelty " + std::to_string(id) + " is not in [1, 20]");
  return builtin_novelties()[static_cast<std::size_t>(id - 1)].payoffs;
}

// Lookup over built-ins plus any user novelties loaded from a file.
class NoveltyCatalog {
 public:
  NoveltyCatalog() {
    for (const auto& n : builtin_novelties()) entries_[n.id] = n;
  }

  void add(const IpdNovelty& n) {
    if (n.id < kFirstUserNoveltyId)
      throw InvalidArgument("user novelty ids must be >= 100, got " + std::to_string(n.id));
    if (!n.payoffs.finite())
      throw InvalidArgument("novelty " + std::to_string(n.id) + " has non-finite payoffs");
    if (!entries_.emplace(n.id, n).second)
      throw InvalidArgument("duplicate novelty id " + std::to_string(n.id));
  }

  bool contains(int id) const { return entries_.count(id) != 0; }

  const IpdNovelty& at(int id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) throw UnknownNovelty("IPD novelty " + std::to_string(id));
    return it->second;
  }

  std::vector<int> ids() const {
    std::vector<int> out;
    for (const auto& [id, _] : entries_) out.push_back(id);
    return out;
  }

 private:
  std::map<int, IpdNovelty> entries_;
};

// Parses a novelty override file: a JSON list of {id, R, S, T, P, note}.
inline std::vector<IpdNovelty> parse_novelty_list(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidArgument("novelty file must hold a JSON list");
  std::vector<IpdNovelty> out;
  for (const auto& e : j) {
    try {
      IpdNovelty n;
      n.id = e.at("id").get<int>();
      n.payoffs = {e.at("R").get<double>(), e.at("S").get<double>(), e.at("T").get<double>(),
                   e.at("P").get<double>()};
      n.note = e.value("note", std::string{});
      for (const auto& [key, _] : e.items()) {
        if (key != "id" && key != "R" && key != "S" && key != "T" && key != "P" && key != "note")
          throw InvalidArgument("unknown novelty field '" + key + "'");
      }
      out.push_back(std::move(n));
    } catch (const nlohmann::json::exception& ex) {
      throw InvalidArgument(std::string("bad novelty entry: ") + ex.what());
    }
  }
  return out;
}

inline nlohmann::json novelty_to_json(const IpdNovelty& n) {
  return {{"id", n.id},     {"R", n.payoffs.R}, {"S", n.payoffs.S},
          {"T", n.payoffs.T}, {"P", n.payoffs.P}, {"note", n.note}};
}

}  // namespace novelty_arena::ipd
