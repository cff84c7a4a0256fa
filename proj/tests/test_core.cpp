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

#include <algorithm>
#include <array>
#include <atomic>
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "novelty_arena/arena.hpp"
#include "novelty_arena/core/agent_matrix.hpp"
#include "novelty_arena/core/matrix_io.hpp"
#include "novelty_arena/core/number_format.hpp"
#include "novelty_arena/core/rng.hpp"
#include "novelty_arena/core/tournament.hpp"

namespace na = novelty_arena;

namespace {

na::AgentMatrix two_by_two(double a01, double a10) {
  na::AgentMatrix m(na::make_agent_ids({"a", "b"}));
  m(0, 1) = a01;
  m(1, 0) = a10;
  return m;
}

}  // namespace

// Reference outputs computed with an independent Python implementation of
// SplitMix64, xoshiro256** and FNV-1a 64.
TEST(Rng, SplitMixReferenceStream) {
  na::SplitMix64 sm(0);
  EXPECT_EQ(sm.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(sm.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(sm.next(), 0x06c45d188009454fULL);
}

TEST(Rng, XoshiroReferenceStream) {
  na::Rng r0(0);
  EXPECT_EQ(r0.next(), 0x99ec5f36cb75f2b4ULL);
  EXPECT_EQ(r0.next(), 0xbf6e1f784956452aULL);
  EXPECT_EQ(r0.next(), 0x1a5f849d4933e6e0ULL);
  EXPECT_EQ(r0.next(), 0x6aa594f1262d2d2cULL);
  na::Rng r1(12345);
  EXPECT_EQ(r1.next(), 0xbe6a36374160d49bULL);
  EXPECT_EQ(r1.next(), 0x214aaa0637a688c6ULL);
}

TEST(Rng, FnvReferenceValues) {
  EXPECT_EQ(na::fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(na::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(na::fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Rng, BelowStaysInRangeAndCoversIt) {
  na::Rng r(3);
  std::array<int, 7> counts{};
  for (int k = 0; k < 70000; ++k) {
    const auto x = r.below(7);
    ASSERT_LT(x, 7u);
    ++counts[x];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  EXPECT_EQ(r.below(0), 0u);
  EXPECT_EQ(r.below(1), 0u);
}

TEST(Rng, Uniform01InUnitInterval) {
  na::Rng r(9);
  double sum = 0;
  for (int k = 0; k < 100000; ++k) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
}

TEST(Rng, ShuffleIsAPermutationAndSeeded) {
  std::vector<int> a(52), b;
  std::iota(a.begin(), a.end(), 0);
  b = a;
  na::Rng r1(5), r2(5);
  r1.shuffle(std::span<int>(a));
  r2.shuffle(std::span<int>(b));
  EXPECT_EQ(a, b);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < 52; ++k) EXPECT_EQ(sorted[static_cast<std::size_t>(k)], k);
  EXPECT_NE(a[0] + 52 * a[1], 0 + 52 * 1);
}

TEST(Rng, DerivedStreamsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 1000; ++t) seen.insert(na::derive_seed(42, t));
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(PairingSeed, IndependentOfArgumentOrder) {
  EXPECT_EQ(na::pairing_seed(1, "Tit for Tat", "Defector"),
            na::pairing_seed(1, "Defector", "Tit for Tat"));
  EXPECT_EQ(na::pairing_seed(1, "Defector", "Tit for Tat"), 0xc081b7fb766cd236ULL);
  EXPECT_NE(na::pairing_seed(1, "a", "b"), na::pairing_seed(2, "a", "b"));
  EXPECT_NE(na::pairing_seed(1, "a", "b"), na::pairing_seed(1, "a", "b", "3"));
}

TEST(Scores, ComplementarySumIsExact) {
  na::Rng r(1);
  for (int k = 0; k < 100000; ++k) {
    const auto [a, b] = na::complementary_scores(r.uniform01());
    ASSERT_EQ(a + b, 1.0);
  }
  for (int wins = 0; wins <= 50; ++wins) {
    const auto [a, b] = na::complementary_scores(wins / 50.0);
    ASSERT_EQ(a + b, 1.0);
  }
}

TEST(AgentMatrix, DiagonalStartsAtOne) {
  na::AgentMatrix m(na::make_agent_ids({"x", "y", "z"}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(m(i, i), 1.0);
  EXPECT_TRUE(na::validate_matrix(m).empty());
}

TEST(AgentMatrix, RejectsDuplicateNames) {
  EXPECT_THROW(na::make_agent_ids({"x", "x"}), na::InvalidArgument);
}

TEST(AgentMatrix, SetPairFillsBothCells) {
  na::AgentMatrix m(na::make_agent_ids({"a", "b"}));
  m.set_pair(0, 1, 0.7, 0.3);
  EXPECT_EQ(m(0, 1), 0.7);
  EXPECT_EQ(m(1, 0), 0.3);
  EXPECT_THROW(m.set_pair(1, 1, 0.5, 0.5), na::InvalidArgument);
  EXPECT_THROW((void)m.at(2, 0), na::InvalidArgument);
}

TEST(ValidateMatrix, ConsistentPairHasNoViolations) {
  EXPECT_TRUE(na::validate_matrix(two_by_two(0.6, 0.4)).empty());
}

TEST(ValidateMatrix, BrokenPairReportsResidual) {
  const auto v = na::validate_matrix(two_by_two(0.6, 0.5));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, na::MatrixViolation::Kind::PairSum);
  EXPECT_NEAR(v[0].residual, 0.1, 1e-12);
  EXPECT_EQ(v[0].i, 0u);
  EXPECT_EQ(v[0].j, 1u);
}

TEST(ValidateMatrix, ZeroDiagonalGivesOneViolationPerCell) {
  na::AgentMatrix m(na::make_agent_ids({"a", "b", "c", "d"}));
  for (std::size_t i = 0; i < 4; ++i) m(i, i) = 0.0;
  const auto v = na::validate_matrix(m);
  ASSERT_EQ(v.size(), 4u);
  for (const auto& x : v) EXPECT_EQ(x.kind, na::MatrixViolation::Kind::Diagonal);
}

TEST(ValidateMatrix, OutOfRangeAndTolerance) {
  auto v = na::validate_matrix(two_by_two(1.2, -0.2));
  EXPECT_EQ(std::count_if(v.begin(), v.end(),
                          [](const auto& x) { return x.kind == na::MatrixViolation::Kind::OutOfRange; }),
            2);
  EXPECT_EQ(na::validate_matrix(two_by_two(0.6, 0.4 + 1e-12)).size(), 1u);
  EXPECT_TRUE(na::validate_matrix(two_by_two(0.6, 0.4 + 1e-12), 1e-9).empty());
}

TEST(NumberFormat, RoundTripsExactly) {
  na::Rng r(77);
  for (int k = 0; k < 20000; ++k) {
    const double x = r.uniform01() * std::pow(10.0, static_cast<double>(r.below(20)) - 10.0);
    ASSERT_EQ(na::parse_double(na::format_double(x)), x);
  }
  EXPECT_EQ(na::format_double(0.5), "0.5");
  EXPECT_EQ(na::format_double(1.0), "1");
  EXPECT_TRUE(std::isinf(na::parse_double(na::format_double(-HUGE_VAL))));
  EXPECT_THROW(na::parse_double("1.5x"), na::InvalidArgument);
}

TEST(MatrixCsv, RoundTripWithQuotedNames) {
  na::AgentMatrix m(na::make_agent_ids({"Tit for Tat", "a,b", "say \"hi\""}));
  na::Rng r(4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const auto [a, b] = na::complementary_scores(r.uniform01());
      m.set_pair(i, j, a, b);
    }
  const auto text = na::matrix_to_csv(m);
  EXPECT_EQ(text.substr(0, text.find('\n')), "agent,Tit for Tat,\"a,b\",\"say \"\"hi\"\"\"");
  EXPECT_EQ(na::matrix_from_csv(text), m);
}

TEST(MatrixCsv, RejectsMalformedInput) {
  EXPECT_THROW(na::matrix_from_csv(""), na::InvalidArgument);
  EXPECT_THROW(na::matrix_from_csv("x,a,b\na,1,0.5\nb,0.5,1\n"), na::InvalidArgument);
  EXPECT_THROW(na::matrix_from_csv("agent,a,b\na,1,0.5\n"), na::InvalidArgument);
  EXPECT_THROW(na::matrix_from_csv("agent,a,b\nb,1,0.5\na,0.5,1\n"), na::InvalidArgument);
  EXPECT_THROW(na::matrix_from_csv("agent,a,b\na,1,zz\nb,0.5,1\n"), na::InvalidArgument);
}

TEST(MatrixJson, RoundTripKeepsProvenance) {
  auto m = two_by_two(0.25, 0.75);
  const auto j = na::matrix_to_json(m, {3, 99, {{"k", 1}}});
  na::MatrixProvenance p;
  EXPECT_EQ(na::matrix_from_json(j, &p), m);
  EXPECT_EQ(p.novelty_id, 3);
  EXPECT_EQ(p.seed, 99u);
  EXPECT_EQ(p.config["k"], 1);
  for (const char* key : {"labels", "cells", "novelty_id", "seed", "config"})
    EXPECT_TRUE(j.contains(key)) << key;
}

TEST(BuildMatrix, TwoAgentsFromOneRecord) {
  const auto ids = na::make_agent_ids({"p", "q"});
  const auto m = na::build_matrix_from_pairings(ids, [&](std::size_t i, std::size_t j) {
    na::MatchRecord r;
    r.agent_a = ids[i];
    r.agent_b = ids[j];
    r.score_a = 0.7;
    r.score_b = 0.3;
    return r;
  });
  EXPECT_EQ(m(0, 1), 0.7);
  EXPECT_EQ(m(1, 0), 0.3);
  EXPECT_EQ(m(0, 0), 1.0);
}

TEST(BuildMatrix, EachPairRunsOnceAndJobsDoNotMatter) {
  const auto ids = na::make_agent_ids({"a", "b", "c", "d", "e", "f"});
  std::atomic<int> calls{0};
  auto fn = [&](std::size_t i, std::size_t j) {
    ++calls;
    na::MatchRecord r;
    r.agent_a = ids[i];
    r.agent_b = ids[j];
    const auto [x, y] = na::complementary_scores(static_cast<double>(i + 2 * j) / 20.0);
    r.score_a = x;
    r.score_b = y;
    return r;
  };
  const auto m1 = na::build_matrix_from_pairings(ids, fn, 1);
  EXPECT_EQ(calls.load(), 15);
  const auto m4 = na::build_matrix_from_pairings(ids, fn, 4);
  EXPECT_EQ(m1, m4);
  EXPECT_TRUE(na::validate_matrix(m1).empty());
}

TEST(BuildMatrix, PropagatesPairingErrors) {
  const auto ids = na::make_agent_ids({"a", "b", "c"});
  auto fn = [&](std::size_t, std::size_t j) -> na::MatchRecord {
    if (j == 2) throw na::UnknownAgent("boom");
    return {};
  };
  EXPECT_THROW(na::build_matrix_from_pairings(ids, fn, 1), na::UnknownAgent);
  EXPECT_THROW(na::build_matrix_from_pairings(ids, fn, 3), na::UnknownAgent);
  EXPECT_THROW(na::build_matrix_from_pairings(na::make_agent_ids({"a"}), fn), na::InvalidArgument);
}

TEST(RunPairing, CooperatorLosesEveryGameToDefector) {
  auto config = na::RunConfig::for_domain(na::Domain::Ipd);
  config.games_per_tournament = 10;
  const auto ids = na::make_agent_ids({"Cooperator", "Defector"});
  const auto rec = na::run_pairing(ids[0], ids[1], na::GameEnvironment::ipd_default(), config, 5);
  EXPECT_EQ(rec.score_a, 0.0);
  EXPECT_EQ(rec.score_b, 1.0);
  EXPECT_EQ(rec.raw_totals.first, 0.0);
  EXPECT_EQ(rec.raw_totals.second, 10.0 * 100 * 10);
  EXPECT_FALSE(rec.novelty_id.has_value());
}

TEST(RunPairing, MirrorImagePairingSwapsScores) {
  auto config = na::RunConfig::for_domain(na::Domain::Ipd);
  config.games_per_tournament = 10;
  const auto ids = na::make_agent_ids({"First by Anonymous", "Average Copier"});
  const auto env = na::GameEnvironment::ipd_default();
  const auto ab = na::run_pairing(ids[0], ids[1], env, config, 11);
  const auto ba = na::run_pairing(ids[1], ids[0], env, config, 11);
  EXPECT_EQ(ab.score_a, ba.score_b);
  EXPECT_EQ(ab.score_b, ba.score_a);
  EXPECT_EQ(ab.raw_totals.first, ba.raw_totals.second);
  EXPECT_EQ(ab, na::run_pairing(ids[0], ids[1], env, config, 11));
}

TEST(RunPairing, TitForTatSelfPlayTies) {
  auto config = na::RunConfig::for_domain(na::Domain::Ipd);
  na::AgentId a{0, "Tit for Tat"}, b{1, "Tit for Tat"};
  const auto rec = na::run_pairing(a, b, na::GameEnvironment::ipd_default(), config, 1);
  EXPECT_EQ(rec.score_a, 0.5);
  EXPECT_EQ(rec.score_b, 0.5);
  EXPECT_THROW(na::run_pairing(a, a, na::GameEnvironment::ipd_default(), config, 1),
               na::InvalidArgument);
  na::AgentId c{0, "Cooperator"};
  const auto coop = na::run_pairing(c, b, na::GameEnvironment::ipd_default(), config, 1);
  EXPECT_EQ(coop.score_a, 0.5);
}

TEST(RunPairing, FlatPayoffsTie) {
  auto config = na::RunConfig::for_domain(na::Domain::Ipd);
  config.games_per_tournament = 5;
  na::AgentId a{0, "First by Anonymous"}, b{1, "Defector"};
  const auto env = na::GameEnvironment::ipd_with({100, 100, 100, 100}, 12);
  const auto rec = na::run_pairing(a, b, env, config, 3);
  EXPECT_EQ(rec.score_a, 0.5);
  EXPECT_EQ(rec.score_b, 0.5);
  EXPECT_EQ(rec.novelty_id, 12);
}

TEST(RunPairing, Errors) {
  auto config = na::RunConfig::for_domain(na::Domain::Ipd);
  na::AgentId ghost{0, "Nobody"}, coop{1, "Cooperator"};
  EXPECT_THROW(na::run_pairing(ghost, coop, na::GameEnvironment::ipd_default(), config, 1),
               na::UnknownAgent);
  na::AgentId raise{1, "Raise"};
  EXPECT_THROW(na::run_pairing(coop, raise, na::GameEnvironment::ipd_default(), config, 1),
               na::UnknownAgent);
  const auto poker_env = na::GameEnvironment::poker_with(na::poker::RuleSet{});
  na::AgentId call{0, "Call"};
  EXPECT_THROW(na::run_pairing(call, raise, poker_env, config, 1), na::DomainMismatch);
  auto cash = config;
  cash.score_mode = na::ScoreMode::CashShare;
  EXPECT_THROW(na::run_pairing(coop, na::AgentId{0, "Defector"}, na::GameEnvironment::ipd_default(),
                               cash, 1),
               na::DomainMismatch);
  config.rounds_per_game = 0;
  EXPECT_THROW(na::run_pairing(coop, na::AgentId{0, "Defector"}, na::GameEnvironment::ipd_default(),
                               config, 1),
               na::InvalidArgument);
}

TEST(BuildAgentMatrix, PermutationEquivariant) {
  auto config = na::RunConfig::for_domain(na::Domain::Ipd);
  config.games_per_tournament = 5;
  std::vector<std::string> names{"Cooperator", "Arrogant Q Learner", "Tit for Tat", "First by Anonymous",
                                 "Average Copier", "Hard Prober"};
  names.erase(std::remove_if(names.begin(), names.end(),
                             [](const std::string& n) { return !na::agent_registered(na::Domain::Ipd, n); }),
              names.end());
  ASSERT_GE(names.size(), 5u);
  const auto env = na::GameEnvironment::ipd_default();
  const auto m = na::build_agent_matrix(na::make_agent_ids(names), env, config, 17);
  std::vector<std::string> shuffled = names;
  std::reverse(shuffled.begin(), shuffled.end());
  std::rotate(shuffled.begin(), shuffled.begin() + 2, shuffled.end());
  const auto p = na::build_agent_matrix(na::make_agent_ids(shuffled), env, config, 17);
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < names.size(); ++j) {
      const auto pi = static_cast<std::size_t>(
          std::find(shuffled.begin(), shuffled.end(), names[i]) - shuffled.begin());
      const auto pj = static_cast<std::size_t>(
          std::find(shuffled.begin(), shuffled.end(), names[j]) - shuffled.begin());
      EXPECT_EQ(m(i, j), p(pi, pj)) << names[i] << " vs " << names[j];
    }
}

TEST(BuildAgentMatrix, DeterministicAcrossRunsAndJobs) {
  auto config = na::RunConfig::for_domain(na::Domain::Poker);
  config.hands_per_pairing = 50;
  const auto ids = na::make_agent_ids(na::poker::poker_agent_names());
  const auto env = na::GameEnvironment::poker_with(na::poker::RuleSet{});
  const auto a = na::build_agent_matrix(ids, env, config, 8, 1);
  const auto b = na::build_agent_matrix(ids, env, config, 8, 3);
  EXPECT_EQ(na::matrix_to_csv(a), na::matrix_to_csv(b));
  EXPECT_TRUE(na::validate_matrix(a, 1e-9).empty());
}

TEST(BuildAgentMatrix, NoveltyStreamsAreSharedUnlessRequested) {
  auto config = na::RunConfig::for_domain(na::Domain::Ipd);
  const auto env = na::GameEnvironment::ipd_with(na::ipd::novelty_payoffs(3), 3);
  EXPECT_EQ(na::stream_tag(env, config), "");
  config.independent_novelty_streams = true;
  EXPECT_EQ(na::stream_tag(env, config), "3");
  EXPECT_EQ(na::stream_tag(na::GameEnvironment::ipd_default(), config), "");
}
