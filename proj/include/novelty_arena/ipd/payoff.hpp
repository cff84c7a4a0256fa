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

#include <algorithm>
#include <cmath>
#include <utility>

namespace novelty_arena::ipd {

enum class IpdAction { Cooperate, Defect };

inline constexpr IpdAction C = IpdAction::Cooperate;
inline constexpr IpdAction D = IpdAction::Defect;

inline constexpr IpdAction flip(IpdAction a) { return a == C ? D : C; }
inline constexpr char to_char(IpdAction a) { return a == C ? 'C' : 'D'; }

// Reward, sucker, temptation, punishment. No ordering is enforced; the
// novelties deliberately break T > R > P > S.
struct PayoffMatrix {
  double R = 6.0;
  double S = 0.0;
  double T = 10.0;
  double P = 1.0;

  bool finite() const {
    return std::isfinite(R) && std::isfinite(S) && std::isfinite(T) && std::isfinite(P);
  }
  double min_value() const { return std::min({R, S, T, P}); }
  double max_value() const { return std::max({R, S, T, P}); }

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;
};

inline constexpr PayoffMatrix kDefaultPayoffs{6.0, 0.0, 10.0, 1.0};

inline constexpr std::pair<double, double> payoff(IpdAction a, IpdAction b,
                                                  const PayoffMatrix& m) {
  if (a == C && b == C) return {m.R, m.R};
  if (a == D && b == D) return {m.P, m.P};
  if (a == C) return {m.S, m.T};
  return {m.T, m.S};
}

// Position of `x` within the matrix's value range, in [0, 1]. A flat
// matrix (all four values equal) maps everything to 0.5. Scaling the matrix
// by a positive constant leaves the result unchanged.
inline double normalized_payoff(double x, const PayoffMatrix& m) {
  const double lo = m.min_value();
  const double hi = m.max_value();
  if (hi == lo) return 0.5;
  return (x - lo) / (hi - lo);
}

}  // namespace novelty_arena::ipd
