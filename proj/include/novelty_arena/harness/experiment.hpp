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

// Experiment orchestration and the on-disk bundle.
//
// Output directory layout:
//   pre_matrix.csv, post_matrix_<id>.csv   agent matrices
//   robustness.csv                         agent x novelty robustness
//   impact.csv                             one row per novelty
//   significance.csv                       one row per agent (k >= 2 only)
//   bundle.json                            everything above plus provenance
//   failure_manifest.json                  only after a failed run

#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "novelty_arena/arena.hpp"
#include "novelty_arena/core/agent_matrix.hpp"
#include "novelty_arena/core/matrix_io.hpp"
#include "novelty_arena/core/number_format.hpp"
#include "novelty_arena/harness/config.hpp"
#include "novelty_arena/metrics/metrics.hpp"
#include "novelty_arena/poker/hand_log.hpp"

namespace novelty_arena::harness {

namespace fs = std::filesystem;

struct RobustnessReport {
  std::vector<int> novelties;
  std::vector<metrics::RobustnessVector> robustness;
  std::vector<metrics::ImpactResult> impacts;
  // Empty when fewer than two novelties were run.
  std::vector<metrics::SignificanceResult> significance;
};

struct ExperimentBundle {
  ExperimentConfig config;
  std::optional<AgentMatrix> pre;
  std::map<int, AgentMatrix> post;
  RobustnessReport report;
  std::string config_hash;
};

inline RobustnessReport compute_report(const AgentMatrix& pre,
                                       const std::map<int, AgentMatrix>& post) {
  if (post.empty()) throw IncompleteBundle("no post-novelty matrices");
  RobustnessReport r;
  std::vector<AgentMatrix> mats;
  for (const auto& [id, m] : post) {
    if (!m.same_labels(pre)) throw LabelMismatch("post matrix " + std::to_string(id) +
                                                 " does not share labels with the pre matrix");
    r.novelties.push_back(id);
    mats.push_back(m);
    r.impacts.push_back(metrics::global_impact(pre, m, id));
  }
  r.robustness = metrics::per_agent_robustness(mats);
  if (mats.size() >= 2) r.significance = metrics::significance_report(r.robustness, pre);
  return r;
}

// ---- CSV tables ----------------------------------------------------------

inline std::string robustness_csv(const RobustnessReport& r) {
  std::string out = "agent";
  for (int id : r.novelties) out += ",novelty_" + std::to_string(id);
  out += '\n';
  for (const auto& rv : r.robustness) {
    out += csv::quote(rv.agent.name);
    for (double v : rv.values) out += "," + format_double(v);
    out += '\n';
  }
  return out;
}

inline std::string impact_csv(const RobustnessReport& r) {
  std::string out = "novelty,mean_abs_delta,std_error,n_pairs\n";
  for (const auto& im : r.impacts)
    out += std::to_string(im.novelty) + "," + format_double(im.mean_abs_delta) + "," +
           format_double(im.std_error) + "," + std::to_string(im.n_pairs) + "\n";
  return out;
}

inline std::string significance_csv(const RobustnessReport& r) {
  std::string out = "agent,baseline_mean,t,p,significant_95,significant_99\n";
  for (const auto& s : r.significance)
    out += csv::quote(s.agent.name) + "," + format_double(s.baseline_mean) + "," +
           format_double(s.t_statistic) + "," + format_double(s.p_value) + "," +
           (s.significant_95 ? "true" : "false") + "," + (s.significant_99 ? "true" : "false") +
           "\n";
  return out;
}

inline nlohmann::json report_to_json(const RobustnessReport& r) {
  nlohmann::json rob = nlohmann::json::array();
  for (const auto& rv : r.robustness) rob.push_back({{"agent", rv.agent.name}, {"values", rv.values}});
  nlohmann::json imp = nlohmann::json::array();
  for (const auto& im : r.impacts)
    imp.push_back({{"novelty", im.novelty},
                   {"mean_abs_delta", im.mean_abs_delta},
                   {"std_error", im.std_error},
                   {"n_pairs", im.n_pairs}});
  nlohmann::json sig = nlohmann::json::array();
  for (const auto& s : r.significance)
    sig.push_back({{"agent", s.agent.name},
                   {"baseline_mean", s.baseline_mean},
                   // JSON has no infinity; the sign survives as a string.
                   {"t", std::isfinite(s.t_statistic) ? nlohmann::json(s.t_statistic)
                                                      : nlohmann::json(format_double(s.t_statistic))},
                   {"p", s.p_value},
                   {"significant_95", s.significant_95},
                   {"significant_99", s.significant_99}});
  return {{"novelties", r.novelties}, {"robustness", rob}, {"impacts", imp}, {"significance", sig}};
}

// The concrete rules behind each novelty id, including the shuffled poker
// orders drawn for this master seed.
inline nlohmann::json novelty_rules_json(const ExperimentConfig& c) {
  nlohmann::json out = nlohmann::json::object();
  for (int id : c.novelties) {
    if (c.domain == Domain::Poker)
      out[std::to_string(id)] = poker::rules_to_json(poker::apply_poker_novelty(id, c.master_seed));
    else
      out[std::to_string(id)] = ipd::novelty_to_json(c.catalog().at(id));
  }
  return out;
}

inline nlohmann::json provenance_json(const ExperimentBundle& b) {
  return {{"engine_version", std::string(kEngineVersion)},
          {"novelty_rules", novelty_rules_json(b.config)},
          {"rng", "xoshiro256** seeded through SplitMix64"},
          {"pairing_seed",
           "FNV-1a 64 of '<master_seed>\\x1f<lesser name>\\x1f<greater name>\\x1f<stream tag>'"},
          {"config", canonical_config(b.config)},
          {"config_hash", b.config_hash},
          {"master_seed", b.config.master_seed},
          {"std_error", "sample sd of |delta| over off-diagonal cells / sqrt(n(n-1))"},
          {"t_test", "one-sample, two-tailed, mu0 = pre-matrix row mean"}};
}

inline nlohmann::json bundle_to_json(const ExperimentBundle& b) {
  const auto canon = canonical_config(b.config);
  nlohmann::json post = nlohmann::json::object();
  for (const auto& [id, m] : b.post)
    post[std::to_string(id)] = matrix_to_json(m, {id, b.config.master_seed, canon});
  return {{"provenance", provenance_json(b)},
          {"pre_matrix", b.pre ? matrix_to_json(*b.pre, {std::nullopt, b.config.master_seed, canon})
                               : nlohmann::json()},
          {"post_matrices", post},
          {"report", report_to_json(b.report)}};
}

inline std::string post_matrix_file(int id) { return "post_matrix_" + std::to_string(id) + ".csv"; }

// Effective worker count: NOVELTY_ARENA_JOBS overrides the config value.
inline unsigned effective_jobs(unsigned configured) {
  if (const char* env = std::getenv("NOVELTY_ARENA_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return configured;
}

using ProgressFn = std::function<void(const std::string&)>;

// Builds the pre matrix and every post matrix, computes the report and
// writes all artifacts under `out_dir`. On failure a failure manifest that
// lists the artifacts already written is left behind and the error is
// rethrown.
inline ExperimentBundle run_experiment(const ExperimentConfig& config, const fs::path& out_dir,
                                       const ProgressFn& progress = {}) {
  fs::create_directories(out_dir);
  fs::remove(out_dir / "failure_manifest.json");
  ExperimentBundle b;
  b.config = config;
  b.config_hash = config_hash(config);
  const auto agents = make_agent_ids(config.agents);
  const unsigned jobs = effective_jobs(config.jobs);
  const double tol = config.run.score_mode == ScoreMode::CashShare ? 1e-9 : 0.0;
  std::vector<std::string> written;
  std::string stage = "pre_matrix";

  auto build = [&](std::optional<int> novelty) {
    auto m = build_agent_matrix(agents, environment_for(config, novelty), config.run,
                                config.master_seed, jobs);
    const auto v = validate_matrix(m, tol);
    if (!v.empty()) throw Error("matrix invariant violated: " + v.front().describe(m));
    return m;
  };
  auto write = [&](const std::string& name, const std::string& text) {
    write_text_file((out_dir / name).string(), text);
    written.push_back(name);
  };

  try {
    if (progress) progress("building pre-novelty matrix");
    b.pre = build(std::nullopt);
    write("pre_matrix.csv", matrix_to_csv(*b.pre));
    for (int id : config.novelties) {
      stage = "post_matrix_" + std::to_string(id);
      if (progress) progress("building matrix for novelty " + std::to_string(id));
      auto m = build(id);
      write(post_matrix_file(id), matrix_to_csv(m));
      b.post.emplace(id, std::move(m));
    }
    stage = "report";
    b.report = compute_report(*b.pre, b.post);
    write("robustness.csv", robustness_csv(b.report));
    write("impact.csv", impact_csv(b.report));
    if (!b.report.significance.empty()) write("significance.csv", significance_csv(b.report));
    write("bundle.json", bundle_to_json(b).dump(2) + "\n");
  } catch (const std::exception& e) {
    nlohmann::json manifest{{"status", "failed"},
                            {"stage", stage},
                            {"error", e.what()},
                            {"written", written},
                            {"config_hash", b.config_hash},
                            {"config", canonical_config(config)}};
    try {
      write_text_file((out_dir / "failure_manifest.json").string(), manifest.dump(2) + "\n");
    } catch (...) {
    }
    throw;
  }
  return b;
}

// Reads pre_matrix.csv and post_matrix_<id>.csv from a directory. The config
// is taken from bundle.json when present.
inline ExperimentBundle load_bundle(const fs::path& dir) {
  ExperimentBundle b;
  if (!fs::is_directory(dir)) throw IncompleteBundle("'" + dir.string() + "' is not a directory");
  const auto bundle_path = dir / "bundle.json";
  if (fs::exists(bundle_path)) {
    const auto j = nlohmann::json::parse(read_text_file(bundle_path.string()));
    b.config = config_from_json(j.at("provenance").at("config"));
    b.config_hash = j.at("provenance").value("config_hash", "");
  }
  if (fs::exists(dir / "pre_matrix.csv"))
    b.pre = matrix_from_csv(read_text_file((dir / "pre_matrix.csv").string()));
  static const std::regex kPost(R"(post_matrix_(\d+)\.csv)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch match;
    const auto name = entry.path().filename().string();
    if (std::regex_match(name, match, kPost))
      b.post.emplace(std::stoi(match[1].str()), matrix_from_csv(read_text_file(entry.path().string())));
  }
  if (b.pre && !b.post.empty()) b.report = compute_report(*b.pre, b.post);
  return b;
}

// Recomputes the report tables from the matrices stored in `dir`.
inline RobustnessReport recompute_metrics(const fs::path& dir) {
  auto b = load_bundle(dir);
  if (!b.pre) throw IncompleteBundle("pre_matrix.csv is missing");
  if (b.post.empty()) throw IncompleteBundle("no post_matrix_<id>.csv files");
  write_text_file((dir / "robustness.csv").string(), robustness_csv(b.report));
  write_text_file((dir / "impact.csv").string(), impact_csv(b.report));
  if (!b.report.significance.empty())
    write_text_file((dir / "significance.csv").string(), significance_csv(b.report));
  return b.report;
}

// Writes one line-delimited JSON hand history per poker pairing and
// condition under `dir`. Seeds match the matrix runs, so the logs describe
// exactly the hands behind each cell.
inline std::vector<fs::path> write_hand_logs(const ExperimentConfig& config, const fs::path& dir) {
  if (config.domain != Domain::Poker) throw InvalidArgument("hand logs exist for poker only");
  fs::create_directories(dir);
  std::vector<std::optional<int>> conditions{std::nullopt};
  for (int id : config.novelties) conditions.emplace_back(id);
  std::vector<fs::path> out;
  for (const auto& cond : conditions) {
    const auto env = environment_for(config, cond);
    const auto& rules = std::get<poker::RuleSet>(env.rules);
    const auto tag = stream_tag(env, config.run);
    for (std::size_t i = 0; i < config.agents.size(); ++i) {
      for (std::size_t j = i + 1; j < config.agents.size(); ++j) {
        const auto& first = std::min(config.agents[i], config.agents[j]);
        const auto& second = std::max(config.agents[i], config.agents[j]);
        const auto seed = pairing_seed(config.master_seed, first, second, tag);
        const auto a = poker::make_poker_agent(poker::poker_agent_id(first));
        const auto bb = poker::make_poker_agent(poker::poker_agent_id(second));
        const auto path = dir / ((cond ? "novelty_" + std::to_string(*cond) : std::string("default")) +
                                 "__" + first + "__" + second + ".jsonl");
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write '" + path.string() + "'");
        poker::poker_tournament_logged(*a, *bb, config.run.hands_per_pairing, rules, seed,
                                       config.run.poker, f);
        out.push_back(path);
      }
    }
  }
  return out;
}

}  // namespace novelty_arena::harness
