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
#include <string>
#include <string_view>
#include <vector>

#include "novelty_arena/core/errors.hpp"

namespace novelty_arena::poker {

enum class Suit : std::uint8_t { Clubs, Diamonds, Hearts, Spades };

inline constexpr int kMinRank = 2;
inline constexpr int kMaxRank = 14;  // Ace
inline constexpr int kRankCount = 13;
inline constexpr int kDeckSize = 52;

struct Card {
  int rank = kMinRank;
  Suit suit = Suit::Clubs;

  constexpr int index() const { return (rank - kMinRank) * 4 + static_cast<int>(suit); }
  static constexpr Card from_index(int idx) {
    return {idx / 4 + kMinRank, static_cast<Suit>(idx % 4)};
  }

  friend constexpr bool operator==(const Card&, const Card&) = default;
};

inline constexpr char kRankChars[] = "??23456789TJQKA";
inline constexpr char kSuitChars[] = "cdhs";

inline std::string to_string(const Card& c) {
  return {kRankChars[c.rank], kSuitChars[static_cast<int>(c.suit)]};
}

inline Card parse_card(std::string_view text) {
  if (text.size() != 2) throw InvalidArgument("bad card '" + std::string(text) + "'");
  int rank = 0;
  for (int r = kMinRank; r <= kMaxRank; ++r)
    if (kRankChars[r] == text[0]) rank = r;
  int suit = -1;
  for (int s = 0; s < 4; ++s)
    if (kSuitChars[s] == text[1]) suit = s;
  if (rank == 0 || suit < 0) throw InvalidArgument("bad card '" + std::string(text) + "'");
  return {rank, static_cast<Suit>(suit)};
}

inline std::vector<Card> standard_deck() {
  std::vector<Card> deck;
  deck.reserve(kDeckSize);
  for (int i = 0; i < kDeckSize; ++i) deck.push_back(Card::from_index(i));
  return deck;
}

}  // namespace novelty_arena::poker
