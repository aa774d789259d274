// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>

#include "knapqaoa/knapsack.hpp"

namespace knapqaoa::knap {

/// Exact dynamic program over capacity. Requires integral weights and
/// capacity (throws std::invalid_argument otherwise; use solve_branch_bound
/// for real weights) and n*(capacity+1) table cells within the work budget
/// (ResourceError otherwise).
SolveResult solve_dp(const KnapsackInstance& instance, std::uint64_t cell_budget = 1'000'000'000);

/// Depth-first branch and bound on ratio-sorted items with the fractional
/// relaxation bound; the take branch is explored before the skip branch so
/// the greedy solution becomes the first incumbent. Completing within the
/// time budget proves optimality; on timeout the incumbent is returned with
/// proven_optimal = false and the best outstanding bound.
SolveResult solve_branch_bound(const KnapsackInstance& instance,
                               std::chrono::duration<double> time_budget =
                                   std::chrono::duration<double>(10.0));

/// Exhaustive maximum over all 2^n selections, n <= 25 (ResourceError above).
/// Value ties resolve to the lexicographically smallest bit vector.
SolveResult brute_force(const KnapsackInstance& instance);

}  // namespace knapqaoa::knap
