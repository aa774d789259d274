// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "knapqaoa/knapsack.hpp"
#include "knapqaoa/rng.hpp"

namespace fixtures {

/// Three items (60,10), (100,20), (120,30) with capacity 50: greedy takes the
/// first two (value 160), the optimum is the last two (value 220).
inline knapqaoa::knap::KnapsackInstance classic3() {
  knapqaoa::knap::KnapsackInstance inst;
  inst.items = {{60, 10}, {100, 20}, {120, 30}};
  inst.capacity = 50;
  inst.id = "classic3";
  return inst;
}

/// Random instance with integer values and either integer or real weights.
inline knapqaoa::knap::KnapsackInstance random_instance(std::size_t n, std::uint64_t seed,
                                                        bool real_weights) {
  knapqaoa::Rng rng(seed);
  knapqaoa::knap::KnapsackInstance inst;
  double total_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double value = static_cast<double>(rng.uniform_int(0, 1000));
    double weight;
    if (real_weights) {
      weight = rng.uniform_real(0.5, 100.0);
    } else {
      weight = static_cast<double>(rng.uniform_int(1, 100));
    }
    inst.items.push_back({value, weight});
    total_weight += weight;
  }
  const double fraction = rng.uniform_real(0.15, 0.85);
  inst.capacity = real_weights ? fraction * total_weight
                               : std::max(1.0, std::floor(fraction * total_weight));
  inst.id = "rand-n" + std::to_string(n) + "-s" + std::to_string(seed);
  return inst;
}

}  // namespace fixtures
