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

// Command-line front end.
//
//   novelty_arena run      --config FILE [--seed N] [--out DIR] [--novelty ID]...
//                          [--jobs N] [--svg] [--hand-logs]
//   novelty_arena metrics  --out DIR
//   novelty_arena export   --out DIR [--kind heatmap|boxplot|impact_bars|all] [--svg]
//   novelty_arena validate (--config FILE | --out DIR)
//   novelty_arena replay   --log FILE
//
// Exit codes: 0 success, 2 validation failure, 1 runtime failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "novelty_arena/core/matrix_io.hpp"
#include "novelty_arena/harness/config.hpp"
#include "novelty_arena/harness/experiment.hpp"
#include "novelty_arena/harness/export.hpp"
#include "novelty_arena/poker/hand_log.hpp"

namespace na = novelty_arena;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kValidationFailure = 2;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<int> novelties;
  std::optional<unsigned> jobs;
  bool svg = false;
  bool hand_logs = false;
  std::string kind = "all";
  std::string log;
};

na::harness::ExperimentConfig load_with_overrides(const Options& o) {
  auto c = na::harness::load_config(o.config);
  if (o.seed) c.master_seed = *o.seed;
  if (!o.novelties.empty()) {
    // Re-validate through the JSON path so unknown ids are rejected the same
    // way as in a config file.
    auto j = nlohmann::json::parse(na::read_text_file(o.config));
    j["novelties"] = o.novelties;
    c = na::harness::config_from_json(j, fs::path(o.config).parent_path());
    if (o.seed) c.master_seed = *o.seed;
  }
  if (!o.out.empty()) c.output_dir = o.out;
  if (o.jobs) c.jobs = *o.jobs;
  if (o.svg) c.svg = true;
  return c;
}

int cmd_run(const Options& o) {
  auto c = load_with_overrides(o);
  if (o.jobs) {
    // An explicit flag wins over the environment variable.
    c.jobs = *o.jobs;
    ::unsetenv("NOVELTY_ARENA_JOBS");
  }
  const fs::path out = c.output_dir;
  std::cerr << "config " << na::harness::config_hash(c) << ", " << c.agents.size() << " agents, "
            << c.novelties.size() << " novelties, seed " << c.master_seed << "\n";
  const auto bundle = na::harness::run_experiment(
      c, out, [](const std::string& msg) { std::cerr << msg << "\n"; });
  if (c.svg) {
    for (auto kind : {na::harness::FigureKind::Heatmap, na::harness::FigureKind::Boxplot,
                      na::harness::FigureKind::ImpactBars})
      na::harness::export_figure_data(bundle, kind, out, true);
  }
  if (o.hand_logs) {
    const auto logs = na::harness::write_hand_logs(c, out / "hands");
    std::cerr << "wrote " << logs.size() << " hand logs\n";
  }
  for (const auto& im : bundle.report.impacts)
    std::cout << "novelty " << im.novelty << " impact " << na::format_double(im.mean_abs_delta)
              << " +- " << na::format_double(im.std_error) << "\n";
  std::cout << "results in " << out.string() << "\n";
  return kOk;
}

int cmd_metrics(const Options& o) {
  const auto report = na::harness::recompute_metrics(o.out);
  std::cout << "recomputed metrics for " << report.robustness.size() << " agents and "
            << report.novelties.size() << " novelties\n";
  return kOk;
}

int cmd_export(const Options& o) {
  const auto bundle = na::harness::load_bundle(o.out);
  std::vector<na::harness::FigureKind> kinds;
  if (o.kind == "all")
    kinds = {na::harness::FigureKind::Heatmap, na::harness::FigureKind::Boxplot,
             na::harness::FigureKind::ImpactBars};
  else
    kinds = {na::harness::parse_figure_kind(o.kind)};
  const fs::path dir = fs::path(o.out) / "figures";
  for (auto k : kinds)
    for (const auto& f : na::harness::export_figure_data(bundle, k, dir, o.svg))
      std::cout << (dir / f).string() << "\n";
  return kOk;
}

int cmd_validate(const Options& o) {
  if (o.config.empty() && o.out.empty()) {
    std::cerr << "validate: give --config and/or --out\n";
    return kValidationFailure;
  }
  int rc = kOk;
  if (!o.config.empty()) {
    const auto c = load_with_overrides(o);
    std::cout << "config ok (" << na::harness::config_hash(c) << ")\n";
  }
  if (!o.out.empty()) {
    const auto b = na::harness::load_bundle(o.out);
    if (!b.pre) throw na::IncompleteBundle("pre_matrix.csv is missing");
    const double tol = b.config.run.score_mode == na::ScoreMode::CashShare ? 1e-9 : 0.0;
    auto check = [&](const std::string& name, const na::AgentMatrix& m) {
      const auto v = na::validate_matrix(m, tol);
      for (const auto& x : v) std::cout << name << ": " << x.describe(m) << "\n";
      if (!v.empty()) rc = kValidationFailure;
    };
    check("pre_matrix", *b.pre);
    for (const auto& [id, m] : b.post) check(na::harness::post_matrix_file(id), m);
    if (rc == kOk) std::cout << "matrices ok (" << 1 + b.post.size() << ")\n";
  }
  return rc;
}

int cmd_replay(const Options& o) {
  std::ifstream in(o.log, std::ios::binary);
  if (!in) throw na::Error("cannot open '" + o.log + "'");
  const auto report = na::poker::replay_hand_log(in);
  for (const auto& m : report.mismatches) std::cout << m << "\n";
  std::cout << report.hands_checked << " hands replayed, " << report.mismatches.size()
            << " mismatches\n";
  return report.ok() ? kOk : kValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Novelty robustness experiments for IPD and heads-up poker"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("--config", o.config, "experiment config (JSON)")->required();
  run->add_option("--seed", o.seed, "override master_seed");
  run->add_option("--out", o.out, "output directory (overrides output_dir)");
  run->add_option("--novelty", o.novelties, "run only these novelty ids (repeatable)");
  run->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--svg", o.svg, "also render SVG figures");
  run->add_flag("--hand-logs", o.hand_logs, "poker: write hand histories under <out>/hands");

  auto* met = app.add_subcommand("metrics", "recompute report tables from stored matrices");
  met->add_option("--out", o.out, "experiment output directory")->required();

  auto* exp = app.add_subcommand("export", "write figure data (and SVGs) to <out>/figures");
  exp->add_option("--out", o.out, "experiment output directory")->required();
  exp->add_option("--kind", o.kind, "heatmap, boxplot, impact_bars or all")
      ->check(CLI::IsMember({"heatmap", "boxplot", "impact_bars", "all"}));
  exp->add_flag("--svg", o.svg, "also render SVG figures");

  auto* val = app.add_subcommand("validate", "check a config and/or stored matrices");
  val->add_option("--config", o.config, "experiment config (JSON)");
  val->add_option("--out", o.out, "experiment output directory");
  val->add_option("--seed", o.seed, "override master_seed");
  val->add_option("--novelty", o.novelties, "novelty ids to validate against the domain");

  auto* rep = app.add_subcommand("replay", "re-execute a poker hand log and compare");
  rep->add_option("--log", o.log, "hand log (JSON lines)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidationFailure;
  }

  try {
    if (*run) return cmd_run(o);
    if (*met) return cmd_metrics(o);
    if (*exp) return cmd_export(o);
    if (*val) return cmd_validate(o);
    if (*rep) return cmd_replay(o);
  } catch (const na::ParseError& e) {
    std::cerr << "error: " << e.what();
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << "\n";
    return kValidationFailure;
  } catch (const na::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kRuntimeFailure;
}
