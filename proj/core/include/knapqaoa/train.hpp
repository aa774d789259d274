// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knapqaoa/copula.hpp"
#include "knapqaoa/knapsack.hpp"

namespace knapqaoa::train {

struct TrainConfig {
  int restarts = 20;
  std::uint64_t shots_per_eval = 10'000;
  std::size_t optimizer_budget = 60;      // objective evaluations per restart
  std::uint64_t seed = 0;
  /// Ranges bound the random restart initialization (the optimizer itself is
  /// unconstrained). Unset ranges default to gamma in [0, pi / max|v|] and
  /// beta in [0, pi].
  std::optional<std::pair<double, double>> gamma_range;
  std::optional<std::pair<double, double>> beta_range;
  /// Exact-distribution objective instead of sampling; deterministic and
  /// seed-independent. Needs n within the statevector cap.
  bool exact = false;
  /// Probability floor defining "observed" support in exact mode; 1e-5
  /// mirrors what a 1e5-shot experiment resolves.
  double support_floor = 1e-5;
  /// Optional warm initialization for the first layer (e.g. a grid argmax);
  /// used by one restart at depth 1.
  std::optional<std::pair<double, double>> depth1_init;
  std::size_t max_qubits = sim::kDefaultMaxQubits;

  void validate() const;
};

std::pair<double, double> default_gamma_range(const knap::KnapsackInstance& instance);
std::pair<double, double> default_beta_range();

struct LayerTrace {
  double gamma = 0.0;
  double beta = 0.0;
  /// Best-so-far objective after each evaluation of the winning restart.
  std::vector<double> objective_history;
  double objective = 0.0;          // winning restart's final objective
  double best_sampled_value = -1;  // from the post-selection evaluation
  double valid_ratio = 0.0;
  int best_restart = 0;
};

struct TrainTrace {
  std::vector<LayerTrace> layers;
  bool zero_restart_pinned = true;  // restart 0 always starts at (0, 0)

  std::string to_json() const;
};

/// Layer-wise training: at each depth only the newly added (gamma, beta) are
/// optimized while earlier layers stay frozen. Each depth runs
/// config.restarts independent local searches; restart 0 starts at (0, 0) so
/// the previous depth's state is always reachable, the rest start uniformly
/// in the configured ranges. Deterministic given config.seed.
std::pair<cop::QaoaParams, TrainTrace> train_layerwise(const knap::KnapsackInstance& instance,
                                                       const cop::CopulaSpec& spec,
                                                       const cop::PairingScheme& pairing,
                                                       std::size_t max_depth,
                                                       const TrainConfig& config);

struct LocalOptResult {
  std::pair<double, double> point;
  double value = 0.0;
  /// Best-so-far value after each objective evaluation (non-decreasing).
  std::vector<double> history;
};

/// Derivative-free 2D maximization (Nelder-Mead style reflect/expand/
/// contract/shrink) under a hard evaluation budget. budget = 1 evaluates and
/// returns the start point. Deterministic given seed.
LocalOptResult local_optimize(const std::function<double(double, double)>& objective,
                              std::pair<double, double> start, std::size_t budget,
                              std::uint64_t seed, std::pair<double, double> step = {0.1, 0.1});

struct GridResult {
  std::vector<double> gammas;  // axis values
  std::vector<double> betas;
  // Cell data in gamma-major order: cell(gi, bi) = gi * betas.size() + bi.
  std::vector<double> best_value;  // best feasible observed value, -1 if none
  std::vector<double> mean_objective;
  std::vector<double> valid_ratio;
  std::size_t argmax_gamma = 0;
  std::size_t argmax_beta = 0;
  /// The (gamma=0, beta=0) reference cell (the warm-start baseline).
  double baseline_best = -1.0;
  double baseline_objective = 0.0;
  /// Cells whose best observed value strictly exceeds the baseline's.
  std::vector<std::uint8_t> red_dot;
  std::vector<std::size_t> top3;  // flat indices of the three best cells

  std::size_t cell(std::size_t gi, std::size_t bi) const { return gi * betas.size() + bi; }
  std::string to_csv() const;  // gamma,beta,best_value,mean_objective,valid_ratio
};

/// Depth-1 sweep over a (gamma, beta) grid. shots = 0 evaluates the exact
/// distribution (deterministic, seed-independent); otherwise each cell is
/// sampled with a per-cell derived seed. The argmax tie-break prefers the
/// smaller gamma, then the smaller beta.
GridResult grid_search_p1(const knap::KnapsackInstance& instance, const cop::CopulaSpec& spec,
                          const cop::PairingScheme& pairing, const std::vector<double>& gammas,
                          const std::vector<double>& betas, std::uint64_t shots,
                          std::uint64_t seed, double support_floor = 1e-5,
                          std::size_t max_qubits = sim::kDefaultMaxQubits);

/// Uniform closed-interval axis including both endpoints.
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// Grid-search-then-train pipeline: the depth-1 grid argmax seeds one of the
/// first-layer restarts.
struct GridTrainResult {
  GridResult grid;
  cop::QaoaParams params;
  TrainTrace trace;
};
GridTrainResult grid_then_train(const knap::KnapsackInstance& instance,
                                const cop::CopulaSpec& spec, const cop::PairingScheme& pairing,
                                std::size_t max_depth, const TrainConfig& config,
                                std::size_t grid_gammas = 32, std::size_t grid_betas = 32);

}  // namespace knapqaoa::train
