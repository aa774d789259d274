// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "knapqaoa/train.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "knapqaoa/knapsack_io.hpp"
#include "knapqaoa/parallel.hpp"
#include "knapqaoa/rng.hpp"

namespace knapqaoa::train {

void TrainConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("need at least one restart");
  if (optimizer_budget < 1) throw std::invalid_argument("optimizer budget must be >= 1");
  if (!exact && shots_per_eval < 1)
    throw std::invalid_argument("sampled training needs shots_per_eval >= 1");
  const auto check_range = [](const std::optional<std::pair<double, double>>& r,
                              const char* name) {
    if (r && !(r->first < r->second))
      throw std::invalid_argument(std::string(name) + " range must be non-degenerate");
  };
  check_range(gamma_range, "gamma");
  check_range(beta_range, "beta");
}

std::pair<double, double> default_gamma_range(const knap::KnapsackInstance& instance) {
  double max_value = 0.0;
  for (const auto& item : instance.items) max_value = std::max(max_value, std::abs(item.value));
  // Scaling by 1/max|v| keeps the cost phase wrap-around comparable across
  // instances with different value magnitudes.
  return {0.0, std::numbers::pi / std::max(max_value, 1.0)};
}

std::pair<double, double> default_beta_range() { return {0.0, std::numbers::pi}; }

namespace {

struct EvalOutcome {
  double objective = 0.0;
  double valid_ratio = 0.0;
  double best_value = -1.0;
};

// Shared circuit-evaluation engine for training and grid search.
struct Evaluator {
  const knap::KnapsackInstance& instance;
  const cop::CopulaSpec& spec;
  const cop::PairingScheme& pairing;
  bool exact;
  std::uint64_t shots;
  double support_floor;
  std::size_t max_qubits;
  cop::InstanceTable table;  // populated in exact mode

  Evaluator(const knap::KnapsackInstance& inst, const cop::CopulaSpec& sp,
            const cop::PairingScheme& pr, bool exact_mode, std::uint64_t shots_per_eval,
            double floor, std::size_t cap)
      : instance(inst), spec(sp), pairing(pr), exact(exact_mode), shots(shots_per_eval),
        support_floor(floor), max_qubits(cap) {
    if (exact) table = cop::InstanceTable::build(instance, cap);
  }

  EvalOutcome from_state(const sim::StateVector& state, std::uint64_t sample_seed) const {
    EvalOutcome out;
    if (exact) {
      const auto metrics = cop::exact_metrics(table, state, support_floor);
      out.objective = metrics.objective;
      out.valid_ratio = metrics.valid_mass;
      out.best_value = metrics.best_value;
      return out;
    }
    const sim::SampleSet samples = sim::sample(state, shots, sample_seed);
    double mass = 0.0;
    std::uint64_t feasible_shots = 0;
    for (const auto& [bits, count] : samples.counts) {
      const auto ev = knap::evaluate(instance, knap::Selection::from_string(bits));
      if (!ev.feasible) continue;
      feasible_shots += count;
      mass += ev.value * static_cast<double>(count);
      out.best_value = std::max(out.best_value, ev.value);
    }
    out.objective = mass / static_cast<double>(samples.shots);
    out.valid_ratio =
        static_cast<double>(feasible_shots) / static_cast<double>(samples.shots);
    return out;
  }

  EvalOutcome evaluate(const cop::QaoaParams& params, std::uint64_t sample_seed) const {
    cop::CircuitOptions options;
    options.max_qubits = max_qubits;
    const sim::StateVector state = cop::run_circuit(instance, spec, pairing, params, options);
    return from_state(state, sample_seed);
  }
};

}  // namespace

LocalOptResult local_optimize(const std::function<double(double, double)>& objective,
                              std::pair<double, double> start, std::size_t budget,
                              std::uint64_t seed, std::pair<double, double> step) {
  if (budget < 1) throw std::invalid_argument("optimizer budget must be >= 1");
  LocalOptResult result;
  result.point = start;
  result.value = -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const auto eval = [&](double x, double y) {
    const double v = objective(x, y);
    ++used;
    if (v > result.value) {
      result.value = v;
      result.point = {x, y};
    }
    result.history.push_back(result.value);
    return v;
  };

  struct Vertex {
    double x, y, f;
  };
  const double f0 = eval(start.first, start.second);
  if (budget == 1) return result;

  Rng rng(seed);
  // Mild deterministic jitter so restarts from identical points still explore
  // distinct simplices.
  const double dx = step.first * rng.uniform_real(0.75, 1.25);
  const double dy = step.second * rng.uniform_real(0.75, 1.25);
  std::array<Vertex, 3> simplex{};
  simplex[0] = {start.first, start.second, f0};
  if (used >= budget) return result;
  simplex[1] = {start.first + dx, start.second, eval(start.first + dx, start.second)};
  if (used >= budget) return result;
  simplex[2] = {start.first, start.second + dy, eval(start.first, start.second + dy)};

  while (used < budget) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
    const Vertex& best = simplex[0];
    const Vertex& second = simplex[1];
    Vertex& worst = simplex[2];
    const double cx = 0.5 * (best.x + second.x);
    const double cy = 0.5 * (best.y + second.y);
    const double rx = cx + (cx - worst.x);
    const double ry = cy + (cy - worst.y);
    const double fr = eval(rx, ry);
    if (used >= budget) break;
    if (fr > best.f) {
      const double ex = cx + 2.0 * (cx - worst.x);
      const double ey = cy + 2.0 * (cy - worst.y);
      const double fe = eval(ex, ey);
      if (fe > fr)
        worst = {ex, ey, fe};
      else
        worst = {rx, ry, fr};
    } else if (fr > second.f) {
      worst = {rx, ry, fr};
    } else {
      const double sx = cx + 0.5 * (worst.x - cx);
      const double sy = cy + 0.5 * (worst.y - cy);
      const double fs = eval(sx, sy);
      if (fs > worst.f) {
        worst = {sx, sy, fs};
      } else {
        // Shrink toward the best vertex.
        if (used >= budget) break;
        simplex[1].x = best.x + 0.5 * (simplex[1].x - best.x);
        simplex[1].y = best.y + 0.5 * (simplex[1].y - best.y);
        simplex[1].f = eval(simplex[1].x, simplex[1].y);
        if (used >= budget) break;
        simplex[2].x = best.x + 0.5 * (simplex[2].x - best.x);
        simplex[2].y = best.y + 0.5 * (simplex[2].y - best.y);
        simplex[2].f = eval(simplex[2].x, simplex[2].y);
      }
    }
  }
  return result;
}

std::pair<cop::QaoaParams, TrainTrace> train_layerwise(const knap::KnapsackInstance& instance,
                                                       const cop::CopulaSpec& spec,
                                                       const cop::PairingScheme& pairing,
                                                       std::size_t max_depth,
                                                       const TrainConfig& config) {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  config.validate();
  const auto gamma_range =
      config.gamma_range ? *config.gamma_range : default_gamma_range(instance);
  const auto beta_range = config.beta_range ? *config.beta_range : default_beta_range();
  const Evaluator evaluator(instance, spec, pairing, config.exact, config.shots_per_eval,
                            config.support_floor, config.max_qubits);

  cop::QaoaParams params;
  TrainTrace trace;
  for (std::size_t depth = 1; depth <= max_depth; ++depth) {
    struct RestartOutcome {
      LocalOptResult opt;
    };
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
    parallel_for(outcomes.size(), [&](std::size_t r) {
      std::pair<double, double> start{0.0, 0.0};
      if (r == 1 && depth == 1 && config.depth1_init) {
        start = *config.depth1_init;
      } else if (r > 0) {
        Rng rng(derive_seed(config.seed, "train-init", depth * 10'000 + r));
        start = {rng.uniform_real(gamma_range.first, gamma_range.second),
                 rng.uniform_real(beta_range.first, beta_range.second)};
      }
      std::uint64_t eval_counter = 0;
      const auto objective = [&, r](double gamma, double beta) {
        cop::QaoaParams candidate = params;
        candidate.gammas.push_back(gamma);
        candidate.betas.push_back(beta);
        const std::uint64_t eval_seed = derive_seed(
            config.seed, "train-eval", (depth << 40) ^ (r << 20) ^ eval_counter++);
        return evaluator.evaluate(candidate, eval_seed).objective;
      };
      const std::pair<double, double> step{
          0.15 * (gamma_range.second - gamma_range.first),
          0.15 * (beta_range.second - beta_range.first)};
      outcomes[r].opt =
          local_optimize(objective, start, config.optimizer_budget,
                         derive_seed(config.seed, "train-nm", depth * 10'000 + r), step);
    });

    std::size_t best_r = 0;
    for (std::size_t r = 1; r < outcomes.size(); ++r)
      if (outcomes[r].opt.value > outcomes[best_r].opt.value) best_r = r;

    const auto& winner = outcomes[best_r].opt;
    params.gammas.push_back(winner.point.first);
    params.betas.push_back(winner.point.second);

    const EvalOutcome final_eval =
        evaluator.evaluate(params, derive_seed(config.seed, "train-report", depth));
    LayerTrace layer;
    layer.gamma = winner.point.first;
    layer.beta = winner.point.second;
    layer.objective_history = winner.history;
    layer.objective = winner.value;
    layer.best_sampled_value = final_eval.best_value;
    layer.valid_ratio = final_eval.valid_ratio;
    layer.best_restart = static_cast<int>(best_r);
    trace.layers.push_back(std::move(layer));
  }
  return {std::move(params), std::move(trace)};
}

std::string TrainTrace::to_json() const {
  nlohmann::json j;
  j["zero_restart_pinned"] = zero_restart_pinned;
  auto& layers_json = j["layers"] = nlohmann::json::array();
  for (const auto& layer : layers) {
    layers_json.push_back({{"gamma", layer.gamma},
                           {"beta", layer.beta},
                           {"objective", layer.objective},
                           {"objective_history", layer.objective_history},
                           {"best_sampled_value", layer.best_sampled_value},
                           {"valid_ratio", layer.valid_ratio},
                           {"best_restart", layer.best_restart}});
  }
  return j.dump(2);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) throw std::invalid_argument("axis needs at least one point");
  std::vector<double> axis(count);
  if (count == 1) {
    axis[0] = lo;
    return axis;
  }
  for (std::size_t i = 0; i < count; ++i)
    axis[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return axis;
}

GridResult grid_search_p1(const knap::KnapsackInstance& instance, const cop::CopulaSpec& spec,
                          const cop::PairingScheme& pairing, const std::vector<double>& gammas,
                          const std::vector<double>& betas, std::uint64_t shots,
                          std::uint64_t seed, double support_floor, std::size_t max_qubits) {
  if (gammas.empty() || betas.empty()) throw std::invalid_argument("grid axes must be non-empty");
  const bool exact = shots == 0;
  const Evaluator evaluator(instance, spec, pairing, exact, shots, support_floor, max_qubits);

  GridResult grid;
  grid.gammas = gammas;
  grid.betas = betas;
  const std::size_t cells = gammas.size() * betas.size();
  grid.best_value.assign(cells, -1.0);
  grid.mean_objective.assign(cells, 0.0);
  grid.valid_ratio.assign(cells, 0.0);

  // One statevector run per gamma, then mixers per beta on a copy.
  parallel_for(gammas.size(), [&](std::size_t gi) {
    cop::CircuitOptions options;
    options.max_qubits = max_qubits;
    sim::StateVector after_cost =
        cop::run_circuit(instance, spec, pairing, cop::QaoaParams{}, options);
    std::vector<double> values(instance.size());
    for (std::size_t i = 0; i < instance.size(); ++i) values[i] = instance.items[i].value;
    cop::apply_cost_layer(after_cost, gammas[gi], values);
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
      sim::StateVector state = after_cost;
      cop::apply_copula_mixer(state, betas[bi], spec, pairing);
      const std::uint64_t cell_seed =
          derive_seed(seed, "grid-cell", gi * betas.size() + bi);
      const EvalOutcome out = evaluator.from_state(state, exact ? 0 : cell_seed);
      const std::size_t cell = grid.cell(gi, bi);
      grid.best_value[cell] = out.best_value;
      grid.mean_objective[cell] = out.objective;
      grid.valid_ratio[cell] = out.valid_ratio;
    }
  });

  // Baseline: the p = 1 circuit at (0, 0), i.e. the bare warm start.
  {
    const EvalOutcome baseline = evaluator.evaluate(
        cop::QaoaParams{{0.0}, {0.0}}, derive_seed(seed, "grid-baseline", 0));
    grid.baseline_best = baseline.best_value;
    grid.baseline_objective = baseline.objective;
  }

  grid.red_dot.assign(cells, 0);
  for (std::size_t c = 0; c < cells; ++c)
    if (grid.best_value[c] > grid.baseline_best) grid.red_dot[c] = 1;

  std::size_t best_cell = 0;
  for (std::size_t gi = 0; gi < gammas.size(); ++gi)
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
      const std::size_t c = grid.cell(gi, bi);
      if (grid.best_value[c] > grid.best_value[best_cell]) best_cell = c;
    }
  grid.argmax_gamma = best_cell / betas.size();
  grid.argmax_beta = best_cell % betas.size();

  std::vector<std::size_t> order(cells);
  for (std::size_t c = 0; c < cells; ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return grid.best_value[a] > grid.best_value[b];
  });
  grid.top3.assign(order.begin(), order.begin() + std::min<std::size_t>(3, cells));
  return grid;
}

std::string GridResult::to_csv() const {
  std::string out = "gamma,beta,best_value,mean_objective,valid_ratio\n";
  for (std::size_t gi = 0; gi < gammas.size(); ++gi)
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
      const std::size_t c = cell(gi, bi);
      out += knap::format_double(gammas[gi]) + "," + knap::format_double(betas[bi]) + "," +
             knap::format_double(best_value[c]) + "," + knap::format_double(mean_objective[c]) +
             "," + knap::format_double(valid_ratio[c]) + "\n";
    }
  return out;
}

GridTrainResult grid_then_train(const knap::KnapsackInstance& instance,
                                const cop::CopulaSpec& spec, const cop::PairingScheme& pairing,
                                std::size_t max_depth, const TrainConfig& config,
                                std::size_t grid_gammas, std::size_t grid_betas) {
  config.validate();
  const auto gamma_range =
      config.gamma_range ? *config.gamma_range : default_gamma_range(instance);
  const auto beta_range = config.beta_range ? *config.beta_range : default_beta_range();
  GridTrainResult result;
  result.grid = grid_search_p1(
      instance, spec, pairing, linspace(gamma_range.first, gamma_range.second, grid_gammas),
      linspace(beta_range.first, beta_range.second, grid_betas),
      config.exact ? 0 : config.shots_per_eval, derive_seed(config.seed, "grid-init", 0),
      config.support_floor, config.max_qubits);
  TrainConfig seeded = config;
  seeded.depth1_init = {result.grid.gammas[result.grid.argmax_gamma],
                        result.grid.betas[result.grid.argmax_beta]};
  auto [params, trace] = train_layerwise(instance, spec, pairing, max_depth, seeded);
  result.params = std::move(params);
  result.trace = std::move(trace);
  return result;
}

}  // namespace knapqaoa::train
