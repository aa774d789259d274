// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "knapqaoa/copula.hpp"
#include "knapqaoa/knapsack.hpp"
#include "knapqaoa/statevector.hpp"

namespace knapqaoa::bench {

/// Count-weighted average feasible value divided by (N_feasible * c_star).
/// With top_k set, only the top_k highest-value feasible shots count, with
/// partial multiplicity allowed at the cutoff. Throws UndefinedMetricError
/// when no feasible sample exists.
double approximation_ratio(const sim::SampleSet& samples, const knap::KnapsackInstance& instance,
                           double c_star, std::optional<std::uint64_t> top_k = std::nullopt);

/// Exact-distribution counterpart: feasible value mass / (feasible mass * c_star).
double approximation_ratio_exact(const cop::InstanceTable& table, const sim::StateVector& state,
                                 double c_star);

/// Fraction of shots whose bitstring satisfies the capacity constraint.
double valid_ratio(const sim::SampleSet& samples, const knap::KnapsackInstance& instance);

/// Best feasible sampled value divided by each baseline value.
std::map<std::string, double> best_ratio_report(const sim::SampleSet& samples,
                                                const knap::KnapsackInstance& instance,
                                                const std::map<std::string, double>& baselines);

/// Best feasible sampled value, or nullopt when no sample is feasible.
std::optional<double> best_feasible_value(const sim::SampleSet& samples,
                                          const knap::KnapsackInstance& instance);

/// Uniform random bitstrings; the reference point a structured sampler has
/// to beat.
sim::SampleSet random_sample_set(std::size_t num_bits, std::uint64_t shots, std::uint64_t seed);

struct MetricsReport {
  std::string instance_id;
  std::string method;
  double best_value = 0.0;
  std::string best_bitstring;
  std::optional<double> approximation_ratio;
  std::optional<double> valid_ratio;
  std::optional<std::uint64_t> top_k_used;
  std::map<std::string, double> baselines;      // method name -> value
  std::map<std::string, double> best_ratios;    // best value / baseline value
  /// Valid ratio of a uniform random sampler at the same shot count.
  std::optional<double> random_valid_ratio;
  std::uint64_t shots = 0;

  std::string to_json() const;
};

}  // namespace knapqaoa::bench
