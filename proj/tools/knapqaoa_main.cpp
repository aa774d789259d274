// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command line front end: instance generation, classical solving, the
// marginal-cost scan, warm-started QAOA runs/training/grid search, and
// report generation. Every run writes a manifest that `report --replay`
// reproduces bit-exactly.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "knapqaoa/errors.hpp"
#include "knapqaoa/experiment.hpp"
#include "knapqaoa/knapsack_io.hpp"
#include "knapqaoa/knapsack_solvers.hpp"
#include "knapqaoa/metrics.hpp"
#include "knapqaoa/statevector.hpp"
#include "knapqaoa/uc.hpp"
#include "knapqaoa/uc_io.hpp"
#include "knapqaoa/version.hpp"

namespace fs = std::filesystem;
using namespace knapqaoa;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw knapqaoa::ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void print_report(const bench::ExperimentResult& result) {
  std::cout << result.report.to_json() << "\n";
  std::cout << "artifacts: " << result.out_dir.string() << "\n";
}

struct CommonFlags {
  std::optional<std::string> config_path;
  std::optional<std::string> instance;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> shots;
  std::optional<std::string> out;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> instance_seed;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config JSON; flags override it");
    cmd->add_option("--instance", instance, "instance file path");
    cmd->add_option("--seed", seed, "root seed for all derived randomness");
    cmd->add_option("--shots", shots, "measurement shots for the final sampling");
    cmd->add_option("--out", out, "output directory");
    cmd->add_option("--n", n, "generated instance size");
    cmd->add_option("--instance-seed", instance_seed, "generator seed");
  }

  bench::ExperimentConfig resolve(const std::string& method,
                                  const std::string& default_out) const {
    bench::ExperimentConfig config;
    if (config_path) config = bench::ExperimentConfig::from_json(slurp(*config_path));
    config.method = method;
    if (!out && config.out_dir == "run") config.out_dir = default_out;
    if (instance) config.instance_path = *instance;
    if (seed) config.seed = *seed;
    if (shots) config.shots = *shots;
    if (out) config.out_dir = *out;
    if (n) config.n = *n;
    if (instance_seed) config.instance_seed = *instance_seed;
    return config;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knapsack + unit-commitment toolkit with a warm-started QAOA simulator"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a problem instance file");
  std::string gen_family = "isc";
  std::size_t gen_n = 16;
  std::uint64_t gen_seed = 1;
  double gen_load_factor = 0.5;
  std::string gen_out = "instance.txt";
  gen->add_option("--family", gen_family, "isc (knapsack) or uc")
      ->check(CLI::IsMember({"isc", "uc"}));
  gen->add_option("--n", gen_n, "number of items / units");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--load-factor", gen_load_factor, "uc load as a fraction of total p_max");
  gen->add_option("--out", gen_out, "output file");
  gen->callback([&] {
    if (gen_family == "uc") {
      uc::save_uc_instance(uc::random_uc_instance(gen_n, gen_seed, gen_load_factor), gen_out);
    } else {
      knap::save_instance(knap::gen_inverse_strongly_correlated(gen_n, gen_seed), gen_out);
    }
    std::cout << "wrote " << gen_out << "\n";
  });

  // solve ---------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "run a classical knapsack solver");
  CommonFlags solve_flags;
  solve_flags.attach(solve);
  std::string solve_method = "bnb";
  solve->add_option("--method", solve_method, "greedy | dp | bnb | brute")
      ->check(CLI::IsMember({"greedy", "dp", "bnb", "brute"}));
  solve->callback([&] {
    print_report(bench::run_experiment(solve_flags.resolve(solve_method, "run-" + solve_method)));
  });

  // uc-scan ---------------------------------------------------------------
  auto* scan = app.add_subcommand("uc-scan", "sweep the marginal-cost grid of a uc instance");
  CommonFlags scan_flags;
  scan_flags.attach(scan);
  std::size_t scan_points = 200;
  std::string scan_solver = "exact";
  std::string scan_cost_mode = "redispatch";
  double scan_load_factor = 0.5;
  scan->add_option("--points", scan_points, "grid resolution");
  scan->add_option("--solver", scan_solver, "knapsack solver per grid point")
      ->check(CLI::IsMember({"exact", "greedy", "qaoa"}));
  scan->add_option("--cost-mode", scan_cost_mode,
                   "cost commitments after re-dispatch or at the marginal-induced powers")
      ->check(CLI::IsMember({"redispatch", "marginal"}));
  scan->add_option("--load-factor", scan_load_factor, "load fraction for generated instances");
  scan->callback([&] {
    auto config = scan_flags.resolve("uc-scan", "run-uc-scan");
    config.family = "uc";
    config.scan_points = scan_points;
    config.scan_solver = scan_solver;
    config.scan_cost_mode = scan_cost_mode;
    config.uc_load_factor = scan_load_factor;
    print_report(bench::run_experiment(config));
  });

  // qaoa-run ---------------------------------------------------------------
  auto* qrun = app.add_subcommand("qaoa-run", "simulate the circuit at fixed parameters");
  CommonFlags qrun_flags;
  qrun_flags.attach(qrun);
  std::vector<double> qrun_gammas, qrun_betas;
  double qrun_k = 8.0;
  bool qrun_exact = false;
  qrun->add_option("--gamma", qrun_gammas, "per-layer cost angles")->expected(-1);
  qrun->add_option("--beta", qrun_betas, "per-layer mixer angles")->expected(-1);
  qrun->add_option("--k", qrun_k, "warm-start smoothing steepness");
  qrun->add_flag("--exact", qrun_exact, "exact-distribution metrics where applicable");
  qrun->callback([&] {
    auto config = qrun_flags.resolve("copqaoa", "run-qaoa");
    config.gammas = qrun_gammas;
    config.betas = qrun_betas;
    if (config.gammas.empty()) {
      config.gammas = {0.0};
      config.betas = {0.0};
    }
    config.warm_start_k = qrun_k;
    config.exact = qrun_exact;
    print_report(bench::run_experiment(config));
  });

  // qaoa-train ---------------------------------------------------------------
  auto* qtrain = app.add_subcommand("qaoa-train", "layer-wise parameter training");
  CommonFlags qtrain_flags;
  qtrain_flags.attach(qtrain);
  std::size_t qtrain_depth = 1;
  int qtrain_restarts = 20;
  std::size_t qtrain_budget = 60;
  std::uint64_t qtrain_shots_per_eval = 10'000;
  double qtrain_k = 8.0;
  bool qtrain_exact = false;
  bool qtrain_grid_init = false;
  qtrain->add_option("--depth", qtrain_depth, "maximum circuit depth");
  qtrain->add_option("--restarts", qtrain_restarts, "independent optimizations per depth");
  qtrain->add_option("--budget", qtrain_budget, "objective evaluations per restart");
  qtrain->add_option("--shots-per-eval", qtrain_shots_per_eval, "shots per objective evaluation");
  qtrain->add_option("--k", qtrain_k, "warm-start smoothing steepness");
  qtrain->add_flag("--exact", qtrain_exact, "train on the exact distribution");
  qtrain->add_flag("--grid-init", qtrain_grid_init, "seed the first layer from a grid search");
  qtrain->callback([&] {
    auto config = qtrain_flags.resolve("copqaoa", "run-qaoa-train");
    config.depth = qtrain_depth;
    config.restarts = qtrain_restarts;
    config.optimizer_budget = qtrain_budget;
    config.shots_per_eval = qtrain_shots_per_eval;
    config.warm_start_k = qtrain_k;
    config.exact = qtrain_exact;
    config.grid_init = qtrain_grid_init;
    print_report(bench::run_experiment(config));
  });

  // qaoa-grid ---------------------------------------------------------------
  auto* qgrid = app.add_subcommand("qaoa-grid", "depth-1 (gamma, beta) grid search");
  CommonFlags qgrid_flags;
  qgrid_flags.attach(qgrid);
  std::size_t qgrid_gammas = 32, qgrid_betas = 32;
  double qgrid_k = 8.0;
  bool qgrid_exact = false;
  std::uint64_t qgrid_cell_shots = 10'000;
  qgrid->add_option("--gammas", qgrid_gammas, "gamma axis resolution");
  qgrid->add_option("--betas", qgrid_betas, "beta axis resolution");
  qgrid->add_option("--cell-shots", qgrid_cell_shots, "shots per grid cell (sampled mode)");
  qgrid->add_option("--k", qgrid_k, "warm-start smoothing steepness");
  qgrid->add_flag("--exact", qgrid_exact, "exact-distribution cells");
  qgrid->callback([&] {
    auto config = qgrid_flags.resolve("copqaoa", "run-qaoa-grid");
    config.grid_gammas = qgrid_gammas;
    config.grid_betas = qgrid_betas;
    config.shots_per_eval = qgrid_cell_shots;
    config.warm_start_k = qgrid_k;
    config.exact = qgrid_exact;
    print_report(bench::run_experiment(config));
  });

  // report ---------------------------------------------------------------
  auto* report = app.add_subcommand("report", "recompute metrics or replay a manifest");
  std::string report_replay, report_samples, report_instance, report_out;
  std::optional<double> report_c_star;
  std::optional<std::uint64_t> report_top_k;
  report->add_option("--replay", report_replay, "manifest to re-execute");
  report->add_option("--samples", report_samples, "samples CSV to score");
  report->add_option("--instance", report_instance, "instance file the samples refer to");
  report->add_option("--c-star", report_c_star, "optimal value for the approximation ratio");
  report->add_option("--top-k", report_top_k, "restrict the ratio to the top-k feasible shots");
  report->add_option("--out", report_out, "output directory for replay mode");
  report->callback([&] {
    if (!report_replay.empty()) {
      const std::string out = report_out.empty() ? "run-replay" : report_out;
      print_report(bench::replay_manifest(report_replay, out));
      return;
    }
    if (report_samples.empty() || report_instance.empty())
      throw CLI::ValidationError("report", "need --replay, or --samples with --instance");
    const auto instance = knap::load_instance(report_instance);
    const auto samples = sim::SampleSet::from_csv(slurp(report_samples));
    bench::MetricsReport out;
    out.instance_id = instance.id;
    out.method = "report";
    out.shots = samples.shots;
    out.valid_ratio = bench::valid_ratio(samples, instance);
    const auto best = bench::best_feasible_value(samples, instance);
    if (best) out.best_value = *best;
    out.baselines["greedy"] = knap::lazy_greedy(instance).value;
    double c_star = 0.0;
    if (report_c_star) {
      c_star = *report_c_star;
    } else {
      const auto exact = knap::solve_branch_bound(instance, std::chrono::duration<double>(30.0));
      if (exact.proven_optimal) {
        c_star = exact.value;
        out.baselines["exact"] = exact.value;
      }
    }
    if (best && c_star > 0.0) {
      out.approximation_ratio =
          bench::approximation_ratio(samples, instance, c_star, report_top_k);
      if (report_top_k) out.top_k_used = *report_top_k;
    }
    if (best) out.best_ratios = bench::best_ratio_report(samples, instance, out.baselines);
    std::cout << out.to_json() << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
