// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "knapqaoa/knapsack_solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "knapqaoa/errors.hpp"

namespace knapqaoa::knap {

namespace {

constexpr double kBoundTol = 1e-9;

bool is_integral(double x) { return std::isfinite(x) && x == std::floor(x); }

// Lexicographic order over bit vectors with bit 0 first: the mask with a 0 at
// the lowest differing bit is the smaller selection.
bool mask_lex_less(std::uint32_t a, std::uint32_t b) {
  if (a == b) return false;
  const std::uint32_t diff = a ^ b;
  const int low = std::countr_zero(diff);
  return ((a >> low) & 1u) == 0;
}

Selection mask_to_selection(std::uint32_t mask, std::size_t n) {
  Selection sel;
  sel.bits.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1u) sel.bits[i] = 1;
  return sel;
}

}  // namespace

SolveResult solve_dp(const KnapsackInstance& instance, std::uint64_t cell_budget) {
  instance.validate();
  if (!is_integral(instance.capacity))
    throw std::invalid_argument("dp solver needs an integral capacity; use solve_branch_bound");
  for (std::size_t i = 0; i < instance.size(); ++i)
    if (!is_integral(instance.items[i].weight))
      throw std::invalid_argument("dp solver needs integral weights (item " + std::to_string(i) +
                                  "); use solve_branch_bound");

  const std::size_t n = instance.size();
  if (instance.capacity > 9e15)
    throw ResourceError("dp capacity too large to tabulate");
  const std::uint64_t cap = static_cast<std::uint64_t>(instance.capacity);
  if (cap + 1 > cell_budget / n)
    throw ResourceError("dp table of " + std::to_string(n) + "x" + std::to_string(cap + 1) +
                        " cells exceeds budget of " + std::to_string(cell_budget));

  std::vector<double> best(cap + 1, 0.0);
  // One take-bit per (item, weight) cell, packed.
  const std::uint64_t words_per_item = (cap + 1 + 63) / 64;
  std::vector<std::uint64_t> take(words_per_item * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = static_cast<std::uint64_t>(instance.items[i].weight);
    const double v = instance.items[i].value;
    if (w > cap) continue;
    std::uint64_t* row = take.data() + i * words_per_item;
    for (std::uint64_t c = cap; c >= w; --c) {
      const double candidate = best[c - w] + v;
      if (candidate > best[c]) {
        best[c] = candidate;
        row[c >> 6] |= 1ULL << (c & 63);
      }
      if (c == w) break;
    }
  }

  SolveResult result;
  result.selection.bits.assign(n, 0);
  std::uint64_t c = cap;
  for (std::size_t i = n; i-- > 0;) {
    const std::uint64_t* row = take.data() + i * words_per_item;
    if ((row[c >> 6] >> (c & 63)) & 1ULL) {
      result.selection.bits[i] = 1;
      c -= static_cast<std::uint64_t>(instance.items[i].weight);
    }
  }
  const Evaluation ev = evaluate(instance, result.selection);
  result.value = ev.value;
  result.weight = ev.weight;
  result.proven_optimal = true;
  result.upper_bound = result.value;
  return result;
}

namespace {

struct BranchState {
  const KnapsackInstance* instance = nullptr;
  std::vector<std::size_t> order;        // ratio-sorted item indices
  std::vector<std::uint8_t> current;     // in sorted positions
  std::vector<std::uint8_t> best_bits;   // in sorted positions
  double best_value = 0.0;
  bool have_incumbent = false;
  double open_bound = 0.0;               // best bound among unexplored subtrees
  bool timed_out = false;
  std::uint64_t nodes = 0;
  std::chrono::steady_clock::time_point deadline;

  double frac_bound(std::size_t level, double remaining) const {
    double bound = 0.0;
    for (std::size_t k = level; k < order.size(); ++k) {
      const Item& it = instance->items[order[k]];
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

  void dfs(std::size_t level, double value, double weight) {
    if (timed_out) {
      open_bound = std::max(open_bound, value + frac_bound(level, instance->capacity - weight));
      return;
    }
    if ((++nodes & 1023) == 0 && std::chrono::steady_clock::now() >= deadline) {
      timed_out = true;
      open_bound = std::max(open_bound, value + frac_bound(level, instance->capacity - weight));
      return;
    }
    if (level == order.size()) {
      if (!have_incumbent || value > best_value) {
        best_value = value;
        best_bits = current;
        have_incumbent = true;
      }
      return;
    }
    if (value + frac_bound(level, instance->capacity - weight) <= best_value + kBoundTol &&
        have_incumbent)
      return;
    const Item& it = instance->items[order[level]];
    if (weight + it.weight <= instance->capacity) {
      current[level] = 1;
      dfs(level + 1, value + it.value, weight + it.weight);
      current[level] = 0;
    }
    dfs(level + 1, value, weight);
  }
};

}  // namespace

SolveResult solve_branch_bound(const KnapsackInstance& instance,
                               std::chrono::duration<double> time_budget) {
  instance.validate();
  BranchState state;
  state.instance = &instance;
  state.order = ratio_order(instance);
  state.current.assign(instance.size(), 0);
  state.deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(time_budget);
  state.dfs(0, 0.0, 0.0);

  SolveResult result;
  result.selection.bits.assign(instance.size(), 0);
  for (std::size_t k = 0; k < state.order.size(); ++k)
    if (!state.best_bits.empty() && state.best_bits[k]) result.selection.bits[state.order[k]] = 1;
  const Evaluation ev = evaluate(instance, result.selection);
  result.value = ev.value;
  result.weight = ev.weight;
  result.proven_optimal = !state.timed_out;
  result.upper_bound =
      state.timed_out ? std::max(state.open_bound, result.value) : result.value;
  return result;
}

SolveResult brute_force(const KnapsackInstance& instance) {
  instance.validate();
  const std::size_t n = instance.size();
  if (n > 25)
    throw ResourceError("brute force capped at 25 items, got " + std::to_string(n));

  // Gray-code walk flips one item per step; candidate improvements are
  // re-evaluated from scratch so accumulated rounding cannot decide a winner.
  std::uint32_t best_mask = 0;
  double best_value = 0.0;
  double value = 0.0, weight = 0.0;
  std::uint32_t gray = 0;
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const std::uint32_t next_gray = static_cast<std::uint32_t>(step ^ (step >> 1));
    const int flipped = std::countr_zero(static_cast<std::uint32_t>(gray ^ next_gray));
    if ((next_gray >> flipped) & 1u) {
      value += instance.items[flipped].value;
      weight += instance.items[flipped].weight;
    } else {
      value -= instance.items[flipped].value;
      weight -= instance.items[flipped].weight;
    }
    gray = next_gray;
    if (weight <= instance.capacity + 1e-7 && value + 1e-7 >= best_value) {
      const Evaluation exact = evaluate(instance, mask_to_selection(gray, n));
      if (exact.feasible &&
          (exact.value > best_value ||
           (exact.value == best_value && mask_lex_less(gray, best_mask)))) {
        best_value = exact.value;
        best_mask = gray;
      }
    }
  }

  SolveResult result;
  result.selection = mask_to_selection(best_mask, n);
  const Evaluation ev = evaluate(instance, result.selection);
  result.value = ev.value;
  result.weight = ev.weight;
  result.proven_optimal = true;
  result.upper_bound = result.value;
  return result;
}

}  // namespace knapqaoa::knap
