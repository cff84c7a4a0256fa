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

// The thirty fixed IPD strategies.
//
// Several descriptions are one-liners that do not pin down an automaton.
// Where that happens the strategy follows the like-named player of the
// Axelrod Python library, and the class comment says so. Strategies whose
// decisions depend on payoff magnitudes compare payoffs only through ratios
// or through their position in the matrix's value range, so multiplying
// the whole matrix by a positive constant never changes a decision.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "novelty_arena/core/errors.hpp"
#include "novelty_arena/core/rng.hpp"
#include "novelty_arena/ipd/payoff.hpp"

namespace novelty_arena::ipd {

inline constexpr int kAgentCount = 30;

// What a strategy sees before choosing its move for round own.size() + 1.
struct IpdObservation {
  std::span<const IpdAction> own;
  std::span<const IpdAction> opponent;
  const PayoffMatrix& payoffs;

  std::size_t round() const { return own.size(); }
  IpdAction opponent_last() const { return opponent.back(); }
  IpdAction own_last() const { return own.back(); }
  std::size_t opponent_defections() const {
    std::size_t n = 0;
    for (auto a : opponent) n += (a == D);
    return n;
  }
};

class IpdStrategy {
 public:
  IpdStrategy(int id, std::string name) : id_(id), name_(std::move(name)) {}
  virtual ~IpdStrategy() = default;
  IpdStrategy(const IpdStrategy&) = delete;
  IpdStrategy& operator=(const IpdStrategy&) = delete;

  int id() const { return id_; }
  const std::string& name() const { return name_; }

  // Clears all per-game state and installs the game's random stream.
  void reset(std::uint64_t stream_seed) {
    rng_ = Rng(stream_seed);
    on_reset();
  }

  IpdAction decide(const IpdObservation& obs) { return choose(obs); }

  // False for strategies whose moves depend on payoff values.
  virtual bool value_free() const { return true; }
  virtual bool stochastic() const { return false; }

 protected:
  virtual void on_reset() {}
  virtual IpdAction choose(const IpdObservation& obs) = 0;
  Rng& rng() { return rng_; }

 private:
  int id_;
  std::string name_;
  Rng rng_{0};
};

namespace strategies {

class Cooperator final : public IpdStrategy {
 public:
  Cooperator() : IpdStrategy(1, "Cooperator") {}
  IpdAction choose(const IpdObservation&) override { return C; }
};

class Defector final : public IpdStrategy {
 public:
  Defector() : IpdStrategy(2, "Defector") {}
  IpdAction choose(const IpdObservation&) override { return D; }
};

class TitForTat final : public IpdStrategy {
 public:
  TitForTat() : IpdStrategy(3, "Tit for Tat") {}
  IpdAction choose(const IpdObservation& o) override {
    return o.round() == 0 ? C : o.opponent_last();
  }
};

class Alternator final : public IpdStrategy {
 public:
  Alternator() : IpdStrategy(4, "Alternator") {}
  IpdAction choose(const IpdObservation& o) override { return o.round() % 2 == 0 ? C : D; }
};

// Plays C six times then D five times, then whichever own action has earned
// the higher average payoff so far (ties go to C). Averages are compared by
// cross-multiplying sums and counts, which is exact under scaling.
class Adaptive final : public IpdStrategy {
 public:
  Adaptive() : IpdStrategy(5, "Adaptive") {}
  bool value_free() const override { return false; }

 protected:
  void on_reset() override { sum_ = {0, 0}, count_ = {0, 0}; }
  IpdAction choose(const IpdObservation& o) override {
    if (o.round() > 0) {
      const auto mine = payoff(o.own_last(), o.opponent_last(), o.payoffs).first;
      const auto k = static_cast<std::size_t>(o.own_last());
      sum_[k] += mine;
      count_[k] += 1;
    }
    if (o.round() < 6) return C;
    if (o.round() < 11) return D;
    // avg_C >= avg_D  <=>  sum_C * n_D >= sum_D * n_C  (both counts > 0 here)
    return sum_[0] * count_[1] >= sum_[1] * count_[0] ? C : D;
  }

 private:
  std::array<double, 2> sum_{};
  std::array<double, 2> count_{};
};

class Grudger final : public IpdStrategy {
 public:
  Grudger() : IpdStrategy(6, "Grudger") {}
  IpdAction choose(const IpdObservation& o) override {
    return o.opponent_defections() > 0 ? D : C;
  }
};

// First move is a fair coin; afterwards cooperates with probability equal to
// the opponent's cooperation ratio.
class AverageCopier final : public IpdStrategy {
 public:
  AverageCopier() : IpdStrategy(7, "Average Copier") {}
  bool stochastic() const override { return true; }
  IpdAction choose(const IpdObservation& o) override {
    if (o.round() == 0) return rng().bernoulli(0.5) ? C : D;
    const double ratio = 1.0 - static_cast<double>(o.opponent_defections()) /
                                   static_cast<double>(o.round());
    return rng().bernoulli(ratio) ? C : D;
  }
};

// Starts with C and switches its own move whenever the opponent defects.
class Appeaser final : public IpdStrategy {
 public:
  Appeaser() : IpdStrategy(8, "Appeaser") {}
  IpdAction choose(const IpdObservation& o) override {
    if (o.round() == 0) return C;
    return o.opponent_last() == D ? flip(o.own_last()) : o.own_last();
  }
};

// Cooperates unless the previous round paid it the lowest value in the
// matrix (the sucker payoff in the classic game). A flat matrix has no low
// payoff, so it cooperates throughout.
class FirmButFair final : public IpdStrategy {
 public:
  FirmButFair() : IpdStrategy(9, "Firm but Fair") {}
  bool value_free() const override { return false; }
  IpdAction choose(const IpdObservation& o) override {
    if (o.round() == 0) return C;
    const auto mine = payoff(o.own_last(), o.opponent_last(), o.payoffs).first;
    const bool flat = o.payoffs.min_value() == o.payoffs.max_value();
    return (!flat && mine == o.payoffs.min_value()) ? D : C;
  }
};

// Draws a cooperation probability once per game from U[0.3, 0.7].
class FirstByAnonymous final : public IpdStrategy {
 public:
  FirstByAnonymous() : IpdStrategy(10, "First by Anonymous") {}
  bool stochastic() const override { return true; }

 protected:
  void on_reset() override { p_ = rng().uniform(0.3, 0.7); }
  IpdAction choose(const IpdObservation&) override { return rng().bernoulli(p_) ? C : D; }

 private:
  double p_ = 0.5;
};

class TitFor2Tats final : public IpdStrategy {
 public:
  TitFor2Tats() : IpdStrategy(11, "Tit for 2 Tats") {}
  IpdAction choose(const IpdObservation& o) override {
    const auto n = o.round();
    return (n >= 2 && o.opponent[n - 1] == D && o.opponent[n - 2] == D) ? D : C;
  }
};

class TwoTitsForTat final : public IpdStrategy {
 public:
  TwoTitsForTat() : IpdStrategy(12, "2 Tits for Tat") {}
  IpdAction choose(const IpdObservation& o) override {
    const auto n = o.round();
    if (n >= 1 && o.opponent[n - 1] == D) return D;
    if (n >= 2 && o.opponent[n - 2] == D) return D;
    return C;
  }
};

// Cooperates unless the opponent has defected in every one of at least four
// rounds, in which case it defects.
class DefectorHunter final : public IpdStrategy {
 public:
  DefectorHunter() : IpdStrategy(13, "Defector Hunter") {}
  IpdAction choose(const IpdObservation& o) override {
    return (o.round() >= 4 && o.opponent_defections() == o.round()) ? D : C;
  }
};

// After an opponent defection, defects for as many rounds as the opponent
// has defected so far, at most 20.
class Punisher final : public IpdStrategy {
 public:
  Punisher() : IpdStrategy(14, "Punisher") {}

 protected:
  void on_reset() override { remaining_ = 0; }
  IpdAction choose(const IpdObservation& o) override {
    if (remaining_ > 0) {
      --remaining_;
      return D;
    }
    if (o.round() > 0 && o.opponent_last() == D) {
      remaining_ = std::min<std::size_t>(o.opponent_defections(), 20) - 1;
      return D;
    }
    return C;
  }

 private:
  std::size_t remaining_ = 0;
};

// Axelrod-library InversePunisher: after an opponent defection, defects for
// int(20 * opponent cooperation ratio) rounds (at least one). Opponents that
// mostly cooperate are punished longest.
class InversePunisher final : public IpdStrategy {
 public:
  InversePunisher() : IpdStrategy(15, "Inverse Punisher") {}

 protected:
  void on_reset() override { remaining_ = 0; }
  IpdAction choose(const IpdObservation& o) override {
    if (remaining_ > 0) {
      --remaining_;
      return D;
    }
    if (o.round() > 0 && o.opponent_last() == D) {
      const auto coop = o.round() - o.opponent_defections();
      auto len = static_cast<std::size_t>(20.0 * static_cast<double>(coop) /
                                          static_cast<double>(o.round()));
      if (len == 0) len = 1;
      remaining_ = len - 1;
      return D;
    }
    return C;
  }

 private:
  std::size_t remaining_ = 0;
};

// Axelrod-library Adaptor: an internal score s moves by a fixed delta per
// joint outcome; cooperation probability is perr + (1 - 2 perr)(tanh(s)+1)/2.
class Adaptor : public IpdStrategy {
 public:
  // Deltas indexed by (own, opponent): CC, CD, DC, DD.
  Adaptor(int id, std::string name, std::array<double, 4> delta)
      : IpdStrategy(id, std::move(name)), delta_(delta) {}
  bool stochastic() const override { return true; }

 protected:
  void on_reset() override { s_ = 0.0; }
  IpdAction choose(const IpdObservation& o) override {
    if (o.round() > 0) {
      const auto idx = 2 * static_cast<std::size_t>(o.own_last()) +
                       static_cast<std::size_t>(o.opponent_last());
      s_ += delta_[idx];
    }
    constexpr double kErr = 0.01;
    const double p = kErr + (1.0 - 2.0 * kErr) * (std::tanh(s_) + 1.0) / 2.0;
    return rng().bernoulli(p) ? C : D;
  }

 private:
  std::array<double, 4> delta_;
  double s_ = 0.0;
};

class AdaptorBrief final : public Adaptor {
 public:
  AdaptorBrief() : Adaptor(16, "Adaptor Brief", {0.0, -1.001505, 0.992107, -0.638734}) {}
};

class AdaptorLong final : public Adaptor {
 public:
  AdaptorLong() : Adaptor(17, "Adaptor Long", {0.0, 1.888159, 1.858883, -0.995703}) {}
};

// Keeps a running estimate of opponent cooperation (start 0.5, rate 0.5) and
// cooperates while the estimate is at least 0.5.
class AdaptiveTitForTat final : public IpdStrategy {
 public:
  AdaptiveTitForTat() : IpdStrategy(18, "Adaptive Tit for Tat") {}

 protected:
  void on_reset() override { world_ = 0.5; }
  IpdAction choose(const IpdObservation& o) override {
    if (o.round() == 0) return C;
    constexpr double kRate = 0.5;
    if (o.opponent_last() == C)
      world_ += kRate * (1.0 - world_);
    else
      world_ -= kRate * world_;
    return world_ >= 0.5 ? C : D;
  }

 private:
  double world_ = 0.5;
};

class AntiTitForTat final : public IpdStrategy {
 public:
  AntiTitForTat() : IpdStrategy(19, "Anti Tit for Tat") {}
  IpdAction choose(const IpdObservation& o) override {
    return o.round() == 0 ? C : flip(o.opponent_last());
  }
};

class Bully final : public IpdStrategy {
 public:
  Bully() : IpdStrategy(20, "Bully") {}
  IpdAction choose(const IpdObservation& o) override {
    return o.round() == 0 ? D : flip(o.opponent_last());
  }
};

// On the k-th punishment trigger, defects k times in a row and then
// cooperates twice. Opponent defections during a punishment or calming
// phase do not start a new one.
class Gradual final : public IpdStrategy {
 public:
  Gradual() : IpdStrategy(21, "Gradual") {}

 protected:
  void on_reset() override {
    punishing_ = false;
    calming_ = 0;
    count_ = 0;
    limit_ = 0;
  }
  IpdAction choose(const IpdObservation& o) override {
    if (calming_ > 0) {
      --calming_;
      return C;
    }
    if (punishing_) {
      if (count_ < limit_) {
        ++count_;
        return D;
      }
      punishing_ = false;
      count_ = 0;
      calming_ = 1;
      return C;
    }
    if (o.round() > 0 && o.opponent_last() == D) {
      punishing_ = true;
      ++limit_;
      count_ = 1;
      return D;
    }
    return C;
  }

 private:
  bool punishing_ = false;
  int calming_ = 0;
  int count_ = 0;
  int limit_ = 0;
};

// Opens D,D,D,D,D,C,C. Afterwards defects forever if the opponent defected
// in both rounds 6 and 7, otherwise cooperates (Axelrod-library rule).
class GradualKiller final : public IpdStrategy {
 public:
  GradualKiller() : IpdStrategy(22, "Gradual Killer") {}
  IpdAction choose(const IpdObservation& o) override {
    static constexpr std::array<IpdAction, 7> kOpening{D, D, D, D, D, C, C};
    if (o.round() < kOpening.size()) return kOpening[o.round()];
    return (o.opponent[5] == D && o.opponent[6] == D) ? D : C;
  }
};

// Mirror image of Grudger (Axelrod-library EasyGo): defects until the
// opponent first defects, then cooperates for the rest of the game.
class EasyGo final : public IpdStrategy {
 public:
  EasyGo() : IpdStrategy(23, "Easy Go") {}
  IpdAction choose(const IpdObservation& o) override {
    return o.opponent_defections() > 0 ? C : D;
  }
};

// Opens C, D. If the opponent's first two moves were also C, D it
// cooperates for the rest of the game, otherwise it defects.
class Handshake final : public IpdStrategy {
 public:
  Handshake() : IpdStrategy(24, "Handshake") {}
  IpdAction choose(const IpdObservation& o) override {
    if (o.round() == 0) return C;
    if (o.round() == 1) return D;
    return (o.opponent[0] == C && o.opponent[1] == D) ? C : D;
  }
};

// Opens D, C, C, C. Defects forever if the opponent cooperated in rounds 2
// and 3 (an exploitable opponent), otherwise plays Tit for Tat.
class HardProber final : public IpdStrategy {
 public:
  HardProber() : IpdStrategy(25, "Hard Prober") {}
  IpdAction choose(const IpdObservation& o) override {
    static constexpr std::array<IpdAction, 4> kProbe{D, C, C, C};
    if (o.round() < kProbe.size()) return kProbe[o.round()];
    if (o.opponent[1] == C && o.opponent[2] == C) return D;
    return o.opponent_last();
  }
};

// Tabular Q-learning over the previous joint action (5 states counting the
// opening). Rewards are range-normalised payoffs; greedy ties go to C.
class QLearner : public IpdStrategy {
 public:
  QLearner(int id, std::string name, double learning_rate, double epsilon)
      : IpdStrategy(id, std::move(name)), alpha_(learning_rate), epsilon_(epsilon) {}
  bool value_free() const override { return false; }
  bool stochastic() const override { return true; }

  static constexpr double kDiscount = 0.9;

 protected:
  void on_reset() override {
    for (auto& row : q_) row = {0.0, 0.0};
    prev_state_ = 0;
  }

  IpdAction choose(const IpdObservation& o) override {
    std::size_t state = 0;
    if (o.round() > 0) {
      state = 1 + 2 * static_cast<std::size_t>(o.own_last()) +
              static_cast<std::size_t>(o.opponent_last());
      const auto a = static_cast<std::size_t>(o.own_last());
      const double reward = normalized_payoff(
          payoff(o.own_last(), o.opponent_last(), o.payoffs).first, o.payoffs);
      const double best_next = std::max(q_[state][0], q_[state][1]);
      auto& q = q_[prev_state_][a];
      q += alpha_ * (reward + kDiscount * best_next - q);
    }
    prev_state_ = state;
    if (rng().bernoulli(epsilon_)) return rng().bernoulli(0.5) ? C : D;
    return q_[state][0] >= q_[state][1] ? C : D;
  }

 private:
  double alpha_;
  double epsilon_;
  std::array<std::array<double, 2>, 5> q_{};
  std::size_t prev_state_ = 0;
};

class ArrogantQLearner final : public QLearner {
 public:
  ArrogantQLearner() : QLearner(26, "Arrogant Q Learner", 0.9, 0.1) {}
};

class CautiousQLearner final : public QLearner {
 public:
  CautiousQLearner() : QLearner(27, "Cautious Q Learner", 0.1, 0.3) {}
};

class HesitantQLearner final : public QLearner {
 public:
  HesitantQLearner() : QLearner(28, "Hesitant Q Learner", 0.5, 0.2) {}
};

// Axelrod-library Resurrection: Tit for Tat, except that five straight rounds
// of mutual defection make it cooperate.
class Resurrection final : public IpdStrategy {
 public:
  Resurrection() : IpdStrategy(29, "Resurrection") {}
  IpdAction choose(const IpdObservation& o) override {
    const auto n = o.round();
    if (n == 0) return C;
    if (n >= 5) {
      bool stuck = true;
      for (std::size_t k = n - 5; k < n; ++k) stuck = stuck && o.own[k] == D && o.opponent[k] == D;
      if (stuck) return C;
    }
    return o.opponent_last();
  }
};

// Cooperates until the opponent "wins" a round (it played C, opponent D)
// and such wins exceed 10% of rounds played; then retaliates with D for 20
// rounds and forgives.
class LimitedRetaliate final : public IpdStrategy {
 public:
  LimitedRetaliate() : IpdStrategy(30, "Limited Retaliate") {}

 protected:
  void on_reset() override {
    retaliating_ = 0;
    opponent_wins_ = 0;
  }
  IpdAction choose(const IpdObservation& o) override {
    const auto n = o.round();
    if (n > 0 && o.own_last() == C && o.opponent_last() == D) ++opponent_wins_;
    if (retaliating_ > 0) {
      --retaliating_;
      return D;
    }
    if (n > 0 && o.own_last() == C && o.opponent_last() == D &&
        static_cast<double>(opponent_wins_) > 0.1 * static_cast<double>(n)) {
      retaliating_ = 19;
      return D;
    }
    return C;
  }

 private:
  int retaliating_ = 0;
  std::size_t opponent_wins_ = 0;
};

}  // namespace strategies

inline std::unique_ptr<IpdStrategy> make_ipd_agent(int id) {
  using namespace strategies;
  switch (id) {
    case 1: return std::make_unique<Cooperator>();
    case 2: return std::make_unique<Defector>();
    case 3: return std::make_unique<TitForTat>();
    case 4: return std::make_unique<Alternator>();
    case 5: return std::make_unique<Adaptive>();
    case 6: return std::make_unique<Grudger>();
    case 7: return std::make_unique<AverageCopier>();
    case 8: return std::make_unique<Appeaser>();
    case 9: return std::make_unique<FirmButFair>();
    case 10: return std::make_unique<FirstByAnonymous>();
    case 11: return std::make_unique<TitFor2Tats>();
    case 12: return std::make_unique<TwoTitsForTat>();
    case 13: return std::make_unique<DefectorHunter>();
    case 14: return std::make_unique<Punisher>();
    case 15: return std::make_unique<InversePunisher>();
    case 16: return std::make_unique<AdaptorBrief>();
    case 17: return std::make_unique<AdaptorLong>();
    case 18: return std::make_unique<AdaptiveTitForTat>();
    case 19: return std::make_unique<AntiTitForTat>();
    case 20: return std::make_unique<Bully>();
    case 21: return std::make_unique<Gradual>();
    case 22: return std::make_unique<GradualKiller>();
    case 23: return std::make_unique<EasyGo>();
    case 24: return std::make_unique<Handshake>();
    case 25: return std::make_unique<HardProber>();
    case 26: return std::make_unique<ArrogantQLearner>();
    case 27: return std::make_unique<CautiousQLearner>();
    case 28: return std::make_unique<HesitantQLearner>();
    case 29: return std::make_unique<Resurrection>();
    case 30: return std::make_unique<LimitedRetaliate>();
    default:
      throw UnknownAgent("IPD agent id " + std::to_string(id) + " is not in [1, 30]");
  }
}

inline const std::vector<std::string>& ipd_agent_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (int id = 1; id <= kAgentCount; ++id) out.push_back(make_ipd_agent(id)->name());
    return out;
  }();
  return names;
}

inline int ipd_agent_id(std::string_view name) {
  const auto& names = ipd_agent_names();
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return static_cast<int>(k) + 1;
  throw UnknownAgent("no IPD agent named '" + std::string(name) + "'");
}

}  // namespace novelty_arena::ipd
