// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace knapqaoa::knap {

/// One knapsack item. Weights are strictly positive; values are nonnegative.
/// Both are real-valued: generated instances carry integers, instances derived
/// from dispatch problems carry continuous weights.
struct Item {
  double value = 0.0;
  double weight = 0.0;
};

struct KnapsackInstance {
  std::vector<Item> items;
  double capacity = 0.0;
  std::string id;

  std::size_t size() const { return items.size(); }

  /// Throws std::invalid_argument on an invariant violation. Capacity zero is
  /// accepted: marginal-cost reductions legitimately produce it when demand
  /// equals the total dispatchable power.
  void validate() const;
};

/// Bit vector over items; bit i set means item i is chosen.
struct Selection {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  std::string to_string() const;
  static Selection from_string(const std::string& s);
};

struct Evaluation {
  double value = 0.0;
  double weight = 0.0;
  bool feasible = false;
};

/// Sums value and weight of the selected items. Feasible iff weight fits.
Evaluation evaluate(const KnapsackInstance& instance, const Selection& selection);

struct SolveResult {
  Selection selection;
  double value = 0.0;
  double weight = 0.0;
  bool proven_optimal = false;
  double upper_bound = 0.0;
};

/// Item order sorted by value/weight ratio, non-increasing. Equal ratios keep
/// the lower original index first so reports are reproducible.
std::vector<std::size_t> ratio_order(const KnapsackInstance& instance);

/// Linear-relaxation (fractional) upper bound: fill by ratio, split the first
/// item that does not fit.
double dantzig_bound(const KnapsackInstance& instance);

/// Takes items in ratio order until the first item that would exceed the
/// remaining capacity, then stops; later items are never considered. The
/// result's upper_bound is the fractional relaxation bound.
SolveResult lazy_greedy(const KnapsackInstance& instance);

struct GreedyStop {
  /// Index (into the instance) of the first item the greedy pass rejected,
  /// or nullopt when everything fit.
  std::optional<std::size_t> first_rejected;
  /// Ratio of the first rejected item, or the minimum ratio when nothing
  /// was rejected.
  double stop_ratio = 0.0;
};

GreedyStop greedy_stop(const KnapsackInstance& instance);

/// Logistic selection probabilities p_i = 1 / (1 + C exp(-k (r_i - r_star)))
/// with C = sum(w)/capacity - 1. When everything fits C would be <= 0 and the
/// logistic degenerates, so C is floored at 1e-9 (all p_i ~ 1). r_star
/// defaults to greedy_stop().stop_ratio.
std::vector<double> smoothed_probabilities(const KnapsackInstance& instance, double k,
                                           double r_star);
std::vector<double> smoothed_probabilities(const KnapsackInstance& instance, double k);

/// Inversely strongly correlated family: values uniform on {1..1000}, weights
/// uniform on {v+98..v+102}, capacity ceil(alpha * sum(w) / 100) with alpha
/// uniform on {10..20}. Deterministic for a given seed.
KnapsackInstance gen_inverse_strongly_correlated(std::size_t n, std::uint64_t seed);

}  // namespace knapqaoa::knap
