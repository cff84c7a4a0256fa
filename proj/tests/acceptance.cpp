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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Tolerances are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "novelty_arena/arena.hpp"
#include "novelty_arena/core/matrix_io.hpp"
#include "novelty_arena/harness/config.hpp"
#include "novelty_arena/harness/experiment.hpp"
#include "novelty_arena/metrics/metrics.hpp"
#include "novelty_arena/poker/engine.hpp"
#include "novelty_arena/poker/evaluator.hpp"
#include "oracles.hpp"

namespace na = novelty_arena;
namespace nh = novelty_arena::harness;
namespace nm = novelty_arena::metrics;
namespace np = novelty_arena::poker;
namespace fs = std::filesystem;

namespace {

constexpr double kCashShareTolerance = 1e-9;      // criterion 1, 7
constexpr double kCooperationMargin = 0.05;       // criterion 4
constexpr double kPokerImpactTargetBand = 0.05;   // criterion 5 (reported, not gated)
constexpr double kTTestTolerance = 1e-6;          // criterion 8
constexpr long kOracleComparisons = 100'000;      // criterion 6, per ordering
constexpr int kOraclePermutations = 20;           // criterion 6
constexpr int kPokerSeeds = 5;                    // criterion 5
constexpr int kRandomMatrices = 100;              // criterion 9

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, x);
  return buf;
}

// Every matrix built here is checked against the zero-sum property.
struct MatrixLog {
  long checked = 0;
  long violations = 0;
  void add(const na::AgentMatrix& m, double tol) {
    ++checked;
    violations += static_cast<long>(na::validate_matrix(m, tol).size());
  }
  void add(const nh::ExperimentBundle& b) {
    const double tol = b.config.run.score_mode == na::ScoreMode::CashShare ? kCashShareTolerance : 0.0;
    if (b.pre) add(*b.pre, tol);
    for (const auto& [id, m] : b.post) add(m, tol);
  }
};

MatrixLog g_matrices;

nh::ExperimentConfig config(const std::string& json) { return nh::parse_config(json); }

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("novelty_arena_acceptance_" + name);
  fs::remove_all(p);
  return p;
}

bool same_files(const fs::path& a, const fs::path& b, std::string* diff) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename().string());
  std::size_t nb = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(b)) ++nb;
  if (names.size() != nb) {
    *diff = "file counts differ";
    return false;
  }
  for (const auto& n : names) {
    if (!fs::exists(b / n) ||
        na::read_text_file((a / n).string()) != na::read_text_file((b / n).string())) {
      *diff = n;
      return false;
    }
  }
  return true;
}

// Full-scale runs shared by several criteria.
struct FullRuns {
  nh::ExperimentBundle ipd, poker;
  fs::path ipd_dir, poker_dir;
  double ipd_seconds = 0, poker_seconds = 0;
};

FullRuns& full_runs() {
  static FullRuns r = [] {
    FullRuns f;
    f.ipd_dir = scratch("ipd_a");
    auto t0 = std::chrono::steady_clock::now();
    f.ipd = nh::run_experiment(config(R"({"domain":"ipd"})"), f.ipd_dir);
    f.ipd_seconds = seconds_since(t0);
    f.poker_dir = scratch("poker_a");
    t0 = std::chrono::steady_clock::now();
    f.poker = nh::run_experiment(config(R"({"domain":"poker"})"), f.poker_dir);
    f.poker_seconds = seconds_since(t0);
    g_matrices.add(f.ipd);
    g_matrices.add(f.poker);
    return f;
  }();
  return r;
}

Outcome scaling_invariance() {
  const auto c = config(R"({"domain":"ipd","agents":["Cooperator","Defector","Tit for Tat",
      "Alternator","Adaptive","Grudger","Average Copier","Appeaser","Firm but Fair",
      "First by Anonymous"],"novelties":[1,2],"games_per_tournament":20})");
  const auto b = nh::run_experiment(c, scratch("scaling"));
  g_matrices.add(b);
  bool ok = true;
  std::string d;
  for (int id : {1, 2}) {
    const auto& m = b.post.at(id);
    const bool same = m == *b.pre;
    const double impact = nm::global_impact(*b.pre, m).mean_abs_delta;
    ok = ok && same && impact == 0.0;
    d += "novelty " + std::to_string(id) + (same ? " identical" : " differs") + ", impact " +
         fmt("%.17g", impact) + "; ";
  }
  return {ok, d + "exact equality required"};
}

Outcome degenerate_uniformity() {
  const auto& f = full_runs();
  bool ok = true;
  std::string d;
  for (int id : {9, 12}) {
    const auto& m = f.ipd.post.at(id);
    long off = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (i != j && m(i, j) != 0.5) ++off;
    ok = ok && off == 0;
    d += "novelty " + std::to_string(id) + ": " + std::to_string(off) + " cells != 0.5; ";
  }
  return {ok, d + std::to_string(f.ipd.pre->size()) + " agents, exact 0.5 required"};
}

Outcome cooperation_dominance() {
  const auto& f = full_runs();
  const auto& m20 = f.ipd.post.at(20);
  std::size_t coop = 0, defect = 0;
  for (const auto& l : m20.labels()) {
    if (l.name == "Cooperator") coop = l.index;
    if (l.name == "Defector") defect = l.index;
  }
  const double rc = nm::off_diagonal_row_mean(m20, coop);
  const double rd = nm::off_diagonal_row_mean(m20, defect);
  const double base = nm::off_diagonal_row_mean(*f.ipd.pre, coop);
  const bool ok = rc - rd >= kCooperationMargin && rc - base >= kCooperationMargin;
  return {ok, "Cooperator " + fmt("%.4f", rc) + ", Defector " + fmt("%.4f", rd) +
                  ", Cooperator default " + fmt("%.4f", base) + "; margin >= " +
                  fmt("%.2f", kCooperationMargin)};
}

Outcome poker_impact_ordering() {
  std::map<int, double> mean;
  for (int seed = 1; seed <= kPokerSeeds; ++seed) {
    auto c = config(R"({"domain":"poker"})");
    c.master_seed = static_cast<std::uint64_t>(seed);
    const auto agents = na::make_agent_ids(c.agents);
    const auto pre =
        na::build_agent_matrix(agents, nh::environment_for(c, std::nullopt), c.run, c.master_seed);
    g_matrices.add(pre, kCashShareTolerance);
    for (int id : c.novelties) {
      const auto post = na::build_agent_matrix(agents, nh::environment_for(c, id), c.run, c.master_seed);
      g_matrices.add(post, kCashShareTolerance);
      mean[id] += nm::global_impact(pre, post).mean_abs_delta / kPokerSeeds;
    }
  }
  // Exchange hand (1) and action constraints (5) must each beat 2, 3 and 4.
  bool ok = true;
  for (int top : {1, 5})
    for (int other : {2, 3, 4}) ok = ok && mean[top] > mean[other];
  std::string d;
  for (const auto& [id, v] : mean) d += std::to_string(id) + ":" + fmt("%.4f", v) + " ";
  const bool near_targets = std::fabs(mean[1] - 0.09) <= kPokerImpactTargetBand &&
                            std::fabs(mean[5] - 0.07) <= kPokerImpactTargetBand;
  return {ok, "mean impact over " + std::to_string(kPokerSeeds) + " seeds " + d +
                  "(targets 0.09/0.07 +-0.05 " + (near_targets ? "met" : "not met") + ")"};
}

Outcome evaluator_oracle() {
  long comparisons = 0, disagreements = 0;
  na::Rng perm_rng(2026);
  for (int ordering = 0; ordering <= kOraclePermutations; ++ordering) {
    np::RuleSet rules;
    rules.deck_filter.min_rank = 10;
    if (ordering > 0) {
      auto ranks = rules.rank_order();
      perm_rng.shuffle(std::span<int>(ranks));
      rules.set_rank_order(ranks);
      auto cats = rules.category_order();
      perm_rng.shuffle(std::span<np::HandCategory>(cats));
      rules.set_category_order(cats);
    }
    auto deck = rules.deck();
    na::Rng rng(static_cast<std::uint64_t>(ordering) + 1);
    long done = 0;
    while (done < kOracleComparisons) {
      // Board plus four hole pairs: six comparisons per deal.
      rng.shuffle(std::span<np::Card>(deck));
      std::array<np::HandValue, 4> v;
      std::array<oracle::PokerKey, 4> k;
      for (std::size_t p = 0; p < 4; ++p) {
        const std::array<np::Card, 7> seven{deck[2 * p], deck[2 * p + 1], deck[8], deck[9],
                                            deck[10], deck[11], deck[12]};
        v[p] = np::evaluate_hand(seven, rules);
        k[p] = oracle::best_key(seven, rules);
      }
      for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = p + 1; q < 4; ++q) {
          if (np::compare_hands(v[p], v[q], rules) != oracle::compare(k[p], k[q])) ++disagreements;
          ++done;
        }
    }
    comparisons += done;
  }
  return {disagreements == 0, std::to_string(comparisons) + " comparisons over " +
                                  std::to_string(kOraclePermutations + 1) + " orderings, " +
                                  std::to_string(disagreements) + " disagreements (0 required)"};
}

Outcome chip_conservation() {
  const auto& names = np::poker_agent_names();
  long hands = 0, bad_hands = 0, tournaments = 0;
  double worst = 0.0;
  std::vector<np::RuleSet> conditions{np::RuleSet{}};
  for (int id = 1; id <= np::kPokerNoveltyCount; ++id) conditions.push_back(np::apply_poker_novelty(id, 1));
  for (auto model : {np::StackModel::Ledger, np::StackModel::CarryForward}) {
    np::TournamentConfig tc;
    tc.stack_model = model;
    for (const auto& rules : conditions)
      for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j) {
          const auto a = np::make_poker_agent(static_cast<int>(i) + 1);
          const auto b = np::make_poker_agent(static_cast<int>(j) + 1);
          const auto seed = na::pairing_seed(1, names[i], names[j], "");
          const auto r = np::poker_tournament(*a, *b, 1000, rules, seed, tc,
                                              [&](int, const np::HandOutcome& h) {
                                                ++hands;
                                                if (h.deltas[0] + h.deltas[1] != 0) ++bad_hands;
                                              });
          ++tournaments;
          worst = std::max(worst, std::fabs(r.share_a + r.share_b - 1.0));
        }
  }
  const bool ok = bad_hands == 0 && worst <= kCashShareTolerance;
  return {ok, std::to_string(hands) + " hands in " + std::to_string(tournaments) +
                  " tournaments, " + std::to_string(bad_hands) + " non-zero-sum hands, max share residual " +
                  fmt("%.3g", worst) + " (<= 1e-9)"};
}

Outcome ttest_oracle() {
  na::Rng rng(8);
  int cases = 0, bad = 0;
  double worst_t = 0, worst_p = 0;
  for (std::size_t k : {3u, 5u, 20u}) {
    for (int c = 0; c < 17 && cases < 50; ++c, ++cases) {
      std::vector<double> xs(k);
      double mu0 = 0.5;
      if (c < 2) {
        // Zero variance, at and away from the hypothesised mean.
        std::fill(xs.begin(), xs.end(), 0.5);
        mu0 = c == 0 ? 0.5 : 0.4;
      } else {
        const double spread = 0.02 + 0.3 * rng.uniform01();
        const double shift = 0.4 * (rng.uniform01() - 0.5);
        for (auto& x : xs) x = 0.5 + shift + spread * (rng.uniform01() - 0.5);
      }
      const auto got = nm::one_sample_ttest(xs, mu0);
      const auto want = oracle::ttest(xs, mu0);
      const double dt = std::isinf(want.first) ? (got.t == want.first ? 0.0 : INFINITY)
                                               : std::fabs(got.t - want.first);
      const double dp = std::fabs(got.p - want.second);
      worst_t = std::max(worst_t, dt);
      worst_p = std::max(worst_p, dp);
      if (!(dt <= kTTestTolerance && dp <= kTTestTolerance)) ++bad;
    }
  }
  return {bad == 0 && cases == 50,
          std::to_string(cases) + " cases, max |dt| " + fmt("%.3g", worst_t) + ", max |dp| " +
              fmt("%.3g", worst_p) + " (<= 1e-6)"};
}

Outcome metric_brute_force() {
  na::Rng rng(99);
  long mismatches = 0, values = 0;
  for (int trial = 0; trial < kRandomMatrices; ++trial) {
    const std::size_t n = 2 + rng.below(29);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("agent" + std::to_string(i));
    const auto ids = na::make_agent_ids(names);
    auto random_matrix = [&] {
      na::AgentMatrix m(ids);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const double x = rng.uniform01();
          m.set_pair(i, j, x, 1.0 - x);
        }
      return m;
    };
    const auto pre = random_matrix();
    std::vector<na::AgentMatrix> posts{random_matrix(), random_matrix()};
    const auto rob = nm::per_agent_robustness(posts);
    for (std::size_t p = 0; p < posts.size(); ++p) {
      for (std::size_t i = 0; i < n; ++i, ++values)
        if (rob[i].values[p] != oracle::row_mean(posts[p], i)) ++mismatches;
      const auto im = nm::global_impact(pre, posts[p]);
      const auto [mean, se] = oracle::impact(pre, posts[p]);
      values += 2;
      if (im.mean_abs_delta != mean) ++mismatches;
      if (im.std_error != se) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(kRandomMatrices) + " matrix sets, " +
                               std::to_string(values) + " values, " + std::to_string(mismatches) +
                               " mismatches (exact equality required)"};
}

Outcome determinism() {
  auto& f = full_runs();
  const auto ipd_b = scratch("ipd_b"), poker_b = scratch("poker_b");
  const auto t0 = std::chrono::steady_clock::now();
  nh::run_experiment(config(R"({"domain":"ipd","jobs":2})"), ipd_b);
  nh::run_experiment(config(R"({"domain":"poker","jobs":2})"), poker_b);
  const double rerun = seconds_since(t0);
  std::string d1, d2;
  const bool ipd_same = same_files(f.ipd_dir, ipd_b, &d1);
  const bool poker_same = same_files(f.poker_dir, poker_b, &d2);
  return {ipd_same && poker_same,
          std::string("IPD ") + (ipd_same ? "identical" : "differs at " + d1) + ", poker " +
              (poker_same ? "identical" : "differs at " + d2) + "; first runs " +
              fmt("%.1f", f.ipd_seconds) + "s + " + fmt("%.1f", f.poker_seconds) + "s, reruns " +
              fmt("%.1f", rerun) + "s"};
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
  };
  // The zero-sum check runs last so it covers every matrix built above.
  const std::vector<Criterion> criteria{
      {2, "scaling invariance (novelties 1, 2)", scaling_invariance},
      {3, "degenerate payoffs give 0.5 (novelties 9, 12)", degenerate_uniformity},
      {4, "cooperation dominance (novelty 20)", cooperation_dominance},
      {5, "poker impact ordering", poker_impact_ordering},
      {6, "hand evaluator oracle, 20-card deck", evaluator_oracle},
      {7, "chip conservation", chip_conservation},
      {8, "t-test oracle", ttest_oracle},
      {9, "metric formulas vs brute force", metric_brute_force},
      {10, "determinism of full runs", determinism},
  };
  std::map<int, std::string> lines;
  int failures = 0;
  auto report = [&](int number, const char* name, const Outcome& o, double secs) {
    char head[160];
    std::snprintf(head, sizeof(head), "%s criterion %d: %s [%.1fs] ", o.pass ? "PASS" : "FAIL",
                  number, name, secs);
    lines[number] = head + o.detail;
    if (!o.pass) ++failures;
    std::fprintf(stderr, "%s\n", lines[number].c_str());
  };
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    report(c.number, c.name, o, seconds_since(t0));
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o{g_matrices.checked > 0 && g_matrices.violations == 0,
                    std::to_string(g_matrices.checked) + " matrices, " +
                        std::to_string(g_matrices.violations) +
                        " violations (exact for win ratio, 1e-9 for cash share)"};
    report(1, "zero-sum matrices", o, seconds_since(t0));
  }
  std::printf("\n");
  for (const auto& [n, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%d of %zu criteria passed\n", static_cast<int>(lines.size()) - failures, lines.size());
  return failures == 0 ? 0 : 1;
}
