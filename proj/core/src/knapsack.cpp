// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "knapqaoa/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "knapqaoa/rng.hpp"

namespace knapqaoa::knap {

void KnapsackInstance::validate() const {
  if (items.empty()) throw std::invalid_argument("knapsack instance has no items");
  if (!(capacity >= 0.0) || !std::isfinite(capacity))
    throw std::invalid_argument("knapsack capacity must be finite and nonnegative");
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!(items[i].weight > 0.0) || !std::isfinite(items[i].weight))
      throw std::invalid_argument("item " + std::to_string(i) + " has nonpositive weight");
    if (!(items[i].value >= 0.0) || !std::isfinite(items[i].value))
      throw std::invalid_argument("item " + std::to_string(i) + " has negative value");
  }
}

std::string Selection::to_string() const {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

Selection Selection::from_string(const std::string& s) {
  Selection sel;
  sel.bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("selection string must be 0/1");
    sel.bits.push_back(c == '1' ? 1 : 0);
  }
  return sel;
}

Evaluation evaluate(const KnapsackInstance& instance, const Selection& selection) {
  if (selection.size() != instance.size())
    throw std::invalid_argument("selection length does not match item count");
  Evaluation ev;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (selection.bits[i]) {
      ev.value += instance.items[i].value;
      ev.weight += instance.items[i].weight;
    }
  }
  ev.feasible = ev.weight <= instance.capacity;
  return ev;
}

std::vector<std::size_t> ratio_order(const KnapsackInstance& instance) {
  std::vector<std::size_t> order(instance.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ra = instance.items[a].value / instance.items[a].weight;
    const double rb = instance.items[b].value / instance.items[b].weight;
    return ra > rb;  // stable sort keeps lower index first on ties
  });
  return order;
}

double dantzig_bound(const KnapsackInstance& instance) {
  double remaining = instance.capacity;
  double bound = 0.0;
  for (std::size_t idx : ratio_order(instance)) {
    const Item& it = instance.items[idx];
    if (it.weight <= remaining) {
      bound += it.value;
      remaining -= it.weight;
    } else {
      bound += it.value * (remaining / it.weight);
      break;
    }
  }
  return bound;
}

SolveResult lazy_greedy(const KnapsackInstance& instance) {
  instance.validate();
  SolveResult result;
  result.selection.bits.assign(instance.size(), 0);
  double remaining = instance.capacity;
  for (std::size_t idx : ratio_order(instance)) {
    const Item& it = instance.items[idx];
    if (it.weight > remaining) break;  // stop at the first rejection
    result.selection.bits[idx] = 1;
    remaining -= it.weight;
  }
  // Reported totals come from evaluate() so they match any later rescoring
  // of the selection bit for bit.
  const Evaluation ev = evaluate(instance, result.selection);
  result.value = ev.value;
  result.weight = ev.weight;
  result.proven_optimal = false;
  result.upper_bound = std::max(dantzig_bound(instance), result.value);
  return result;
}

GreedyStop greedy_stop(const KnapsackInstance& instance) {
  instance.validate();
  GreedyStop stop;
  const auto order = ratio_order(instance);
  double remaining = instance.capacity;
  for (std::size_t idx : order) {
    const Item& it = instance.items[idx];
    if (it.weight > remaining) {
      stop.first_rejected = idx;
      stop.stop_ratio = it.value / it.weight;
      return stop;
    }
    remaining -= it.weight;
  }
  const std::size_t last = order.back();
  stop.stop_ratio = instance.items[last].value / instance.items[last].weight;
  return stop;
}

std::vector<double> smoothed_probabilities(const KnapsackInstance& instance, double k,
                                           double r_star) {
  instance.validate();
  if (!(k > 0.0)) throw std::invalid_argument("steepness k must be positive");
  std::vector<double> probs(instance.size());
  if (instance.capacity == 0.0) {
    // Nothing fits; the logistic scale C = sum(w)/c - 1 diverges.
    std::fill(probs.begin(), probs.end(), 0.0);
    return probs;
  }
  double total_weight = 0.0;
  for (const Item& it : instance.items) total_weight += it.weight;
  const double c_scale = std::max(total_weight / instance.capacity - 1.0, 1e-9);
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const double r = instance.items[i].value / instance.items[i].weight;
    // exp may overflow to inf for steep k; 1/(1 + inf) correctly yields 0.
    probs[i] = 1.0 / (1.0 + c_scale * std::exp(-k * (r - r_star)));
  }
  return probs;
}

std::vector<double> smoothed_probabilities(const KnapsackInstance& instance, double k) {
  return smoothed_probabilities(instance, k, greedy_stop(instance).stop_ratio);
}

KnapsackInstance gen_inverse_strongly_correlated(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("instance size must be at least 1");
  Rng rng(seed);
  KnapsackInstance instance;
  instance.items.reserve(n);
  std::uint64_t weight_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t v = rng.uniform_int(1, 1000);
    const std::uint64_t w = rng.uniform_int(v + 98, v + 102);
    instance.items.push_back({static_cast<double>(v), static_cast<double>(w)});
    weight_sum += w;
  }
  const std::uint64_t alpha = rng.uniform_int(10, 20);
  instance.capacity = static_cast<double>((alpha * weight_sum + 99) / 100);  // ceil
  instance.id = "isc-n" + std::to_string(n) + "-s" + std::to_string(seed);
  return instance;
}

}  // namespace knapqaoa::knap
