// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "knapqaoa/experiment.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "knapqaoa/errors.hpp"
#include "knapqaoa/heatmap_svg.hpp"
#include "knapqaoa/knapsack_io.hpp"
#include "knapqaoa/knapsack_solvers.hpp"
#include "knapqaoa/rng.hpp"
#include "knapqaoa/train.hpp"
#include "knapqaoa/uc.hpp"
#include "knapqaoa/uc_io.hpp"
#include "knapqaoa/version.hpp"

namespace knapqaoa::bench {

namespace {

nlohmann::json config_to_json_obj(const ExperimentConfig& c) {
  nlohmann::json j;
  j["method"] = c.method;
  j["instance_path"] = c.instance_path;
  j["family"] = c.family;
  j["n"] = c.n;
  j["instance_seed"] = c.instance_seed;
  j["uc_load_factor"] = c.uc_load_factor;
  j["seed"] = c.seed;
  j["shots"] = c.shots;
  j["out_dir"] = c.out_dir;
  j["warm_start_k"] = c.warm_start_k;
  j["theta"] = c.theta;
  j["depth"] = c.depth;
  j["exact"] = c.exact;
  j["gammas"] = c.gammas;
  j["betas"] = c.betas;
  j["restarts"] = c.restarts;
  j["shots_per_eval"] = c.shots_per_eval;
  j["optimizer_budget"] = c.optimizer_budget;
  j["grid_gammas"] = c.grid_gammas;
  j["grid_betas"] = c.grid_betas;
  j["grid_init"] = c.grid_init;
  j["max_qubits"] = c.max_qubits;
  j["scan_points"] = c.scan_points;
  j["scan_solver"] = c.scan_solver;
  j["scan_cost_mode"] = c.scan_cost_mode;
  return j;
}

ExperimentConfig config_from_json_obj(const nlohmann::json& j) {
  ExperimentConfig c;
  c.method = j.value("method", c.method);
  c.instance_path = j.value("instance_path", c.instance_path);
  c.family = j.value("family", c.family);
  c.n = j.value("n", c.n);
  c.instance_seed = j.value("instance_seed", c.instance_seed);
  c.uc_load_factor = j.value("uc_load_factor", c.uc_load_factor);
  c.seed = j.value("seed", c.seed);
  c.shots = j.value("shots", c.shots);
  c.out_dir = j.value("out_dir", c.out_dir);
  c.warm_start_k = j.value("warm_start_k", c.warm_start_k);
  c.theta = j.value("theta", c.theta);
  c.depth = j.value("depth", c.depth);
  c.exact = j.value("exact", c.exact);
  c.gammas = j.value("gammas", c.gammas);
  c.betas = j.value("betas", c.betas);
  c.restarts = j.value("restarts", c.restarts);
  c.shots_per_eval = j.value("shots_per_eval", c.shots_per_eval);
  c.optimizer_budget = j.value("optimizer_budget", c.optimizer_budget);
  c.grid_gammas = j.value("grid_gammas", c.grid_gammas);
  c.grid_betas = j.value("grid_betas", c.grid_betas);
  c.grid_init = j.value("grid_init", c.grid_init);
  c.max_qubits = j.value("max_qubits", c.max_qubits);
  c.scan_points = j.value("scan_points", c.scan_points);
  c.scan_solver = j.value("scan_solver", c.scan_solver);
  c.scan_cost_mode = j.value("scan_cost_mode", c.scan_cost_mode);
  return c;
}

class StageTimer {
 public:
  void start(const std::string& stage) {
    stage_ = stage;
    t0_ = std::chrono::steady_clock::now();
  }
  void stop() {
    const auto dt = std::chrono::steady_clock::now() - t0_;
    timings_[stage_] = std::chrono::duration<double>(dt).count();
  }
  const std::map<std::string, double>& timings() const { return timings_; }
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
  std::chrono::steady_clock::time_point t0_;
  std::map<std::string, double> timings_;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << content;
}

/// Classical reference values: greedy always, an exact value when provable
/// at desk scale. Returns (baselines, c_star).
std::pair<std::map<std::string, double>, std::optional<double>> classical_baselines(
    const knap::KnapsackInstance& instance) {
  std::map<std::string, double> baselines;
  baselines["greedy"] = knap::lazy_greedy(instance).value;
  std::optional<double> c_star;
  if (instance.size() <= 20) {
    const auto exact = knap::brute_force(instance);
    baselines["exact"] = exact.value;
    c_star = exact.value;
  } else {
    try {
      const auto dp = knap::solve_dp(instance);
      baselines["exact"] = dp.value;
      c_star = dp.value;
    } catch (const std::exception&) {
      const auto bnb = knap::solve_branch_bound(instance, std::chrono::duration<double>(20.0));
      if (bnb.proven_optimal) {
        baselines["exact"] = bnb.value;
        c_star = bnb.value;
      } else {
        baselines["bnb_incumbent"] = bnb.value;
      }
    }
  }
  return {baselines, c_star};
}

sim::SampleSet single_solution_samples(const knap::SolveResult& result) {
  sim::SampleSet set;
  set.counts[result.selection.to_string()] = 1;
  set.shots = 1;
  return set;
}

}  // namespace

uc::ScanSolver qaoa_scan_solver(const QaoaScanSolverConfig& config) {
  return {[config](const knap::KnapsackInstance& instance) {
            knap::SolveResult result;
            result.selection.bits.assign(instance.size(), 0);
            // Instance-content seeding keeps the result independent of the
            // order grid points are evaluated in.
            const std::uint64_t call_seed =
                derive_seed(config.seed, "qaoa-scan", detail::fnv1a(knap::to_text(instance)));
            cop::CopulaSpec spec;
            spec.probs = knap::smoothed_probabilities(instance, config.warm_start_k);
            const auto pairing = cop::PairingScheme::ring(instance.size());
            train::TrainConfig tconfig;
            tconfig.restarts = config.restarts;
            tconfig.optimizer_budget = config.optimizer_budget;
            tconfig.shots_per_eval = std::max<std::uint64_t>(config.shots / 4, 256);
            tconfig.seed = call_seed;
            tconfig.max_qubits = config.max_qubits;
            auto [params, trace] = train::train_layerwise(
                instance, spec, pairing, std::max<std::size_t>(config.depth, 1), tconfig);
            cop::CircuitOptions options;
            options.max_qubits = config.max_qubits;
            const auto state = cop::run_circuit(instance, spec, pairing, params, options);
            const auto samples =
                sim::sample(state, config.shots, derive_seed(call_seed, "scan-sample"));
            double best_value = -1.0;
            std::string best_bits;
            for (const auto& [bits, count] : samples.counts) {
              const auto ev = knap::evaluate(instance, knap::Selection::from_string(bits));
              if (ev.feasible && ev.value > best_value) {
                best_value = ev.value;
                best_bits = bits;
              }
            }
            if (!best_bits.empty()) result.selection = knap::Selection::from_string(best_bits);
            const auto ev = knap::evaluate(instance, result.selection);
            result.value = ev.value;
            result.weight = ev.weight;
            result.proven_optimal = false;
            result.upper_bound = std::max(knap::dantzig_bound(instance), result.value);
            return result;
          },
          true};
}

std::string ExperimentConfig::to_json() const { return config_to_json_obj(*this).dump(2); }

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  try {
    return config_from_json_obj(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  namespace fs = std::filesystem;
  StageTimer timer;
  ExperimentResult result;
  result.out_dir = fs::path(config.out_dir);
  try {
    fs::create_directories(result.out_dir);
    const auto emit = [&](const std::string& name, const std::string& content) {
      write_file(result.out_dir / name, content);
      result.outputs.push_back(name);
    };

    MetricsReport report;
    report.method = config.method;
    report.shots = config.shots;

    if (config.method == "uc-scan") {
      timer.start("load-instance");
      uc::UcInstance instance =
          config.instance_path.empty()
              ? uc::random_uc_instance(config.n, config.instance_seed, config.uc_load_factor)
              : uc::load_uc_instance(config.instance_path);
      emit("instance.uc.txt", uc::to_text(instance));
      timer.stop();

      timer.start("scan");
      uc::ScanSolver solver;
      if (config.scan_solver == "greedy") {
        solver = uc::greedy_scan_solver();
      } else if (config.scan_solver == "qaoa") {
        QaoaScanSolverConfig qaoa_config;
        qaoa_config.seed = config.seed;
        qaoa_config.depth = config.depth;
        qaoa_config.warm_start_k = config.warm_start_k;
        qaoa_config.max_qubits = config.max_qubits;
        solver = qaoa_scan_solver(qaoa_config);
      } else {
        solver = uc::exact_scan_solver();
      }
      uc::ScanOptions scan_options;
      if (config.scan_cost_mode == "marginal")
        scan_options.mode = uc::ScanCostMode::kMarginalPowers;
      const auto scan =
          uc::solve_uc_via_scan(instance, uc::default_marginal_grid(instance, config.scan_points),
                                solver, scan_options);
      timer.stop();

      timer.start("metrics");
      emit("scan.csv", uc::scan_to_csv(scan));
      report.instance_id = "uc-n" + std::to_string(instance.size());
      report.best_value = scan.best_cost;
      report.best_bitstring = scan.best_commitment.to_string();
      if (instance.size() <= 14) {
        const auto exact = uc::brute_force_uc(instance);
        report.baselines["uc_exact"] = exact.cost;
        if (exact.cost != 0.0) report.best_ratios["uc_exact"] = scan.best_cost / exact.cost;
      }
      emit("metrics.json", report.to_json());
      timer.stop();
    } else {
      timer.start("load-instance");
      knap::KnapsackInstance instance =
          config.instance_path.empty()
              ? knap::gen_inverse_strongly_correlated(config.n, config.instance_seed)
              : knap::load_instance(config.instance_path);
      emit("instance.txt", knap::to_text(instance));
      report.instance_id = instance.id;
      timer.stop();

      if (config.method == "copqaoa") {
        timer.start("warm-start");
        cop::CopulaSpec spec;
        spec.probs = knap::smoothed_probabilities(instance, config.warm_start_k);
        spec.theta = config.theta;
        const cop::PairingScheme pairing = cop::PairingScheme::ring(instance.size());
        timer.stop();

        train::TrainConfig tconfig;
        tconfig.restarts = config.restarts;
        tconfig.shots_per_eval = config.shots_per_eval;
        tconfig.optimizer_budget = config.optimizer_budget;
        tconfig.seed = config.seed;
        tconfig.exact = config.exact;
        tconfig.max_qubits = config.max_qubits;

        cop::QaoaParams params;
        if (config.grid_gammas > 0 && config.grid_betas > 0 && !config.grid_init) {
          timer.start("grid-search");
          const auto grange = train::default_gamma_range(instance);
          const auto brange = train::default_beta_range();
          const auto grid = train::grid_search_p1(
              instance, spec, pairing,
              train::linspace(grange.first, grange.second, config.grid_gammas),
              train::linspace(brange.first, brange.second, config.grid_betas),
              config.exact ? 0 : config.shots_per_eval, derive_seed(config.seed, "grid", 0),
              tconfig.support_floor, config.max_qubits);
          emit("heatmap.csv", grid.to_csv());
          emit("heatmap.svg", heatmap_to_svg(grid));
          params.gammas = {grid.gammas[grid.argmax_gamma]};
          params.betas = {grid.betas[grid.argmax_beta]};
          timer.stop();
        } else if (!config.gammas.empty()) {
          params.gammas = config.gammas;
          params.betas = config.betas;
          params.validate();
        } else if (config.grid_init) {
          timer.start("grid-train");
          const auto combined = train::grid_then_train(
              instance, spec, pairing, config.depth, tconfig,
              config.grid_gammas ? config.grid_gammas : 32,
              config.grid_betas ? config.grid_betas : 32);
          emit("heatmap.csv", combined.grid.to_csv());
          emit("heatmap.svg", heatmap_to_svg(combined.grid));
          emit("trace.json", combined.trace.to_json());
          params = combined.params;
          timer.stop();
        } else {
          timer.start("train");
          auto [trained, trace] =
              train::train_layerwise(instance, spec, pairing, config.depth, tconfig);
          emit("trace.json", trace.to_json());
          params = trained;
          timer.stop();
        }

        timer.start("sample");
        cop::CircuitOptions options;
        options.max_qubits = config.max_qubits;
        const sim::StateVector state =
            cop::run_circuit(instance, spec, pairing, params, options);
        const sim::SampleSet samples =
            sim::sample(state, config.shots, derive_seed(config.seed, "final-sample", 0));
        emit("samples.csv", samples.to_csv());
        timer.stop();

        timer.start("metrics");
        auto [baselines, c_star] = classical_baselines(instance);
        report.baselines = baselines;
        const auto best = best_feasible_value(samples, instance);
        if (best) {
          report.best_value = *best;
          report.best_ratios = best_ratio_report(samples, instance, baselines);
          for (const auto& [bits, count] : samples.counts) {
            const auto ev = knap::evaluate(instance, knap::Selection::from_string(bits));
            if (ev.feasible && ev.value == *best) {
              report.best_bitstring = bits;
              break;
            }
          }
        }
        report.valid_ratio = valid_ratio(samples, instance);
        if (c_star && *c_star > 0.0 && best)
          report.approximation_ratio = approximation_ratio(samples, instance, *c_star);
        const sim::SampleSet random_samples = random_sample_set(
            instance.size(), config.shots, derive_seed(config.seed, "random-baseline", 0));
        report.random_valid_ratio = valid_ratio(random_samples, instance);
        emit("metrics.json", report.to_json());
        timer.stop();
      } else {
        timer.start("solve");
        knap::SolveResult solved;
        if (config.method == "greedy") {
          solved = knap::lazy_greedy(instance);
        } else if (config.method == "dp") {
          solved = knap::solve_dp(instance);
        } else if (config.method == "bnb") {
          solved = knap::solve_branch_bound(instance);
        } else if (config.method == "brute") {
          solved = knap::brute_force(instance);
        } else {
          throw std::invalid_argument("unknown method '" + config.method + "'");
        }
        timer.stop();

        timer.start("metrics");
        const sim::SampleSet samples = single_solution_samples(solved);
        emit("samples.csv", samples.to_csv());
        report.best_value = solved.value;
        report.best_bitstring = solved.selection.to_string();
        report.shots = 1;
        report.valid_ratio = valid_ratio(samples, instance);
        report.baselines["greedy"] = knap::lazy_greedy(instance).value;
        if (solved.proven_optimal) {
          report.baselines["exact"] = solved.value;
          if (solved.value > 0.0)
            report.approximation_ratio = approximation_ratio(samples, instance, solved.value);
        }
        report.best_ratios = best_ratio_report(samples, instance, report.baselines);
        emit("metrics.json", report.to_json());
        timer.stop();
      }
    }

    timer.start("manifest");
    nlohmann::json manifest;
    manifest["version"] = kVersion;
    manifest["config"] = config_to_json_obj(config);
    manifest["outputs"] = result.outputs;
    manifest["timings"] = timer.timings();
    write_file(result.out_dir / "manifest.json", manifest.dump(2));
    result.outputs.push_back("manifest.json");
    timer.stop();

    result.report = report;
    return result;
  } catch (const std::exception& e) {
    throw std::runtime_error("experiment stage '" + timer.stage() + "' failed: " + e.what());
  }
}

ExperimentConfig config_from_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + manifest_path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    const auto j = nlohmann::json::parse(buffer.str());
    return config_from_json_obj(j.at("config"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest " + manifest_path.string() + ": " + e.what());
  }
}

ExperimentResult replay_manifest(const std::filesystem::path& manifest_path,
                                 const std::string& out_dir) {
  ExperimentConfig config = config_from_manifest(manifest_path);
  config.out_dir = out_dir;
  return run_experiment(config);
}

}  // namespace knapqaoa::bench
