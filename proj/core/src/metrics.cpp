// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "knapqaoa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "knapqaoa/errors.hpp"
#include "knapqaoa/rng.hpp"

namespace knapqaoa::bench {

double approximation_ratio(const sim::SampleSet& samples, const knap::KnapsackInstance& instance,
                           double c_star, std::optional<std::uint64_t> top_k) {
  if (!(c_star > 0.0)) throw std::invalid_argument("c_star must be positive");
  if (top_k && *top_k == 0) throw std::invalid_argument("top_k must be >= 1");
  struct FeasibleGroup {
    double value;
    std::uint64_t count;
  };
  std::vector<FeasibleGroup> feasible;
  std::uint64_t feasible_shots = 0;
  for (const auto& [bits, count] : samples.counts) {
    const auto ev = knap::evaluate(instance, knap::Selection::from_string(bits));
    if (!ev.feasible) continue;
    feasible.push_back({ev.value, count});
    feasible_shots += count;
  }
  if (feasible_shots == 0)
    throw UndefinedMetricError("approximation ratio undefined: no feasible samples");

  double mass = 0.0;
  std::uint64_t counted = feasible_shots;
  if (top_k) {
    std::sort(feasible.begin(), feasible.end(),
              [](const FeasibleGroup& a, const FeasibleGroup& b) { return a.value > b.value; });
    std::uint64_t remaining = std::min(*top_k, feasible_shots);
    counted = remaining;
    for (const auto& group : feasible) {
      if (remaining == 0) break;
      const std::uint64_t take = std::min(group.count, remaining);
      mass += group.value * static_cast<double>(take);
      remaining -= take;
    }
  } else {
    for (const auto& group : feasible) mass += group.value * static_cast<double>(group.count);
  }
  return mass / (static_cast<double>(counted) * c_star);
}

double approximation_ratio_exact(const cop::InstanceTable& table, const sim::StateVector& state,
                                 double c_star) {
  if (!(c_star > 0.0)) throw std::invalid_argument("c_star must be positive");
  const auto metrics = cop::exact_metrics(table, state, 0.0);
  if (metrics.valid_mass <= 0.0)
    throw UndefinedMetricError("approximation ratio undefined: no feasible mass");
  return metrics.objective / (metrics.valid_mass * c_star);
}

double valid_ratio(const sim::SampleSet& samples, const knap::KnapsackInstance& instance) {
  if (samples.shots == 0) throw std::invalid_argument("need at least one shot");
  std::uint64_t feasible_shots = 0;
  for (const auto& [bits, count] : samples.counts) {
    const auto ev = knap::evaluate(instance, knap::Selection::from_string(bits));
    if (ev.feasible) feasible_shots += count;
  }
  return static_cast<double>(feasible_shots) / static_cast<double>(samples.shots);
}

std::optional<double> best_feasible_value(const sim::SampleSet& samples,
                                          const knap::KnapsackInstance& instance) {
  std::optional<double> best;
  for (const auto& [bits, count] : samples.counts) {
    const auto ev = knap::evaluate(instance, knap::Selection::from_string(bits));
    if (ev.feasible && (!best || ev.value > *best)) best = ev.value;
  }
  return best;
}

std::map<std::string, double> best_ratio_report(const sim::SampleSet& samples,
                                                const knap::KnapsackInstance& instance,
                                                const std::map<std::string, double>& baselines) {
  const auto best = best_feasible_value(samples, instance);
  if (!best) throw UndefinedMetricError("best-ratio undefined: no feasible samples");
  std::map<std::string, double> ratios;
  for (const auto& [name, value] : baselines) {
    if (value == 0.0) continue;
    ratios[name] = *best / value;
  }
  return ratios;
}

sim::SampleSet random_sample_set(std::size_t num_bits, std::uint64_t shots, std::uint64_t seed) {
  if (num_bits == 0) throw std::invalid_argument("need at least one bit");
  if (shots == 0) throw std::invalid_argument("need at least one shot");
  Rng rng(seed);
  sim::SampleSet set;
  set.shots = shots;
  std::string bits(num_bits, '0');
  for (std::uint64_t s = 0; s < shots; ++s) {
    for (std::size_t q = 0; q < num_bits; ++q) bits[q] = (rng.next() & 1u) ? '1' : '0';
    ++set.counts[bits];
  }
  return set;
}

std::string MetricsReport::to_json() const {
  nlohmann::json j;
  j["instance_id"] = instance_id;
  j["method"] = method;
  j["best_value"] = best_value;
  j["best_bitstring"] = best_bitstring;
  j["approximation_ratio"] =
      approximation_ratio ? nlohmann::json(*approximation_ratio) : nlohmann::json(nullptr);
  j["valid_ratio"] = valid_ratio ? nlohmann::json(*valid_ratio) : nlohmann::json(nullptr);
  j["top_k_used"] = top_k_used ? nlohmann::json(*top_k_used) : nlohmann::json(nullptr);
  j["baselines"] = baselines;
  j["best_ratios"] = best_ratios;
  j["random_valid_ratio"] =
      random_valid_ratio ? nlohmann::json(*random_valid_ratio) : nlohmann::json(nullptr);
  j["shots"] = shots;
  return j.dump(2);
}

}  // namespace knapqaoa::bench
