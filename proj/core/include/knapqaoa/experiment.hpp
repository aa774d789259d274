// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "knapqaoa/metrics.hpp"
#include "knapqaoa/uc.hpp"

namespace knapqaoa::bench {

/// Knapsack-solver callback for the marginal scan backed by the warm-started
/// circuit: smooth the greedy ratios, train briefly, sample, return the best
/// feasible bitstring. Per-call seeds are derived from the instance content,
/// so concurrent grid points stay deterministic.
struct QaoaScanSolverConfig {
  std::size_t depth = 1;
  int restarts = 3;
  std::size_t optimizer_budget = 10;
  std::uint64_t shots = 4000;
  std::uint64_t seed = 1;
  double warm_start_k = 8.0;
  std::size_t max_qubits = 22;
};
uc::ScanSolver qaoa_scan_solver(const QaoaScanSolverConfig& config);

/// One experiment = one instance, one method, one root seed. Every value
/// needed to reproduce the run byte-for-byte lives here; the manifest embeds
/// this struct and replaying the manifest re-derives identical outputs.
struct ExperimentConfig {
  std::string method = "greedy";  // greedy | dp | bnb | brute | copqaoa | uc-scan

  // Instance source: a file path, or generator parameters when empty.
  std::string instance_path;
  std::string family = "isc";  // isc (knapsack) | uc
  std::size_t n = 16;
  std::uint64_t instance_seed = 1;
  double uc_load_factor = 0.5;

  std::uint64_t seed = 1;
  std::uint64_t shots = 100'000;
  std::string out_dir = "run";

  // copqaoa settings
  double warm_start_k = 8.0;
  double theta = -1.0;
  std::size_t depth = 1;
  bool exact = false;
  std::vector<double> gammas;  // explicit schedule; empty means train
  std::vector<double> betas;
  int restarts = 20;
  std::uint64_t shots_per_eval = 10'000;
  std::size_t optimizer_budget = 60;
  std::size_t grid_gammas = 0;  // nonzero switches to grid-search mode
  std::size_t grid_betas = 0;
  bool grid_init = false;  // grid argmax seeds the first trained layer
  std::size_t max_qubits = 22;

  // uc-scan settings
  std::size_t scan_points = 200;
  std::string scan_solver = "exact";         // exact | greedy | qaoa
  std::string scan_cost_mode = "redispatch"; // redispatch | marginal

  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
};

struct ExperimentResult {
  MetricsReport report;
  std::filesystem::path out_dir;
  std::vector<std::string> outputs;  // file names written under out_dir
};

/// Runs the configured method end to end and persists instance, samples,
/// metrics, optional heatmap/trace/scan artifacts, and a manifest. Failures
/// are rethrown with the failing stage named.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Reads the config back out of a manifest written by run_experiment.
ExperimentConfig config_from_manifest(const std::filesystem::path& manifest_path);

/// Re-runs a manifest into a fresh output directory; metrics JSON and samples
/// CSV come out byte-identical to the original run.
ExperimentResult replay_manifest(const std::filesystem::path& manifest_path,
                                 const std::string& out_dir);

}  // namespace knapqaoa::bench
