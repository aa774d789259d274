// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "knapqaoa/knapsack.hpp"

namespace knapqaoa::uc {

/// Generating unit with quadratic production cost A + B p + C p^2 on
/// [p_min, p_max] when committed. C must be strictly positive; the marginal
/// cost inversion divides by 2C.
struct UcUnit {
  double commit_cost = 0.0;      // A
  double linear_cost = 0.0;      // B
  double quadratic_cost = 0.0;   // C
  double p_min = 0.0;
  double p_max = 0.0;

  double cost_at(double p) const {
    return commit_cost + linear_cost * p + quadratic_cost * p * p;
  }
  double marginal_at(double p) const { return linear_cost + 2.0 * quadratic_cost * p; }
};

struct UcInstance {
  std::vector<UcUnit> units;
  double load = 0.0;  // demand L

  std::size_t size() const { return units.size(); }
  void validate() const;
};

/// On/off pattern, bit i set means unit i is committed.
struct Commitment {
  std::vector<std::uint8_t> bits;
  std::string to_string() const;
};

struct Dispatch {
  std::vector<double> powers;  // one per unit, zero for uncommitted units
};

/// The shared marginal-cost value (lambda in the KKT system) together with
/// the reconstructed bound multipliers for committed units.
struct MarginalParam {
  double value = 0.0;
  std::vector<double> xi;   // lower-bound multipliers, 0 for uncommitted units
  std::vector<double> eta;  // upper-bound multipliers
};

/// Interior stationary power (D - B) / (2C), projected onto [p_min, p_max].
double dispatch_at_marginal(const UcUnit& unit, double marginal);

/// Total commitment-plus-production cost for a commitment/dispatch pair.
/// Throws std::invalid_argument when the dispatch violates the commitment
/// (power on an off unit, or power outside the unit's limits).
double uc_cost(const UcInstance& uc, const Commitment& commitment, const Dispatch& dispatch);

/// Equal-marginal economic dispatch of the committed units: bisection on the
/// marginal value until committed power sums to the load within 1e-9.
/// Throws InfeasibleError when the committed units cannot reach the load or
/// their minimum generation already exceeds it.
std::pair<Dispatch, MarginalParam> exact_dispatch(const UcInstance& uc,
                                                  const Commitment& commitment);

/// First-order optimality check: every committed unit is either at the common
/// marginal value, pinned at p_min with a higher marginal, or pinned at p_max
/// with a lower one.
bool verify_kkt(const UcInstance& uc, const Commitment& commitment, const Dispatch& dispatch,
                double marginal, double tol);

/// Knapsack over switch-off decisions at a fixed marginal value. Items carry
/// weight p_i(D) and value A_i + B_i p_i(D) + C_i p_i(D)^2 (the cost saved by
/// switching unit i off); capacity is sum(p_i(D)) - L. Units whose projected
/// power is zero save their commitment cost for free and are pre-decided off;
/// item_unit maps knapsack items back to unit indices.
struct UcKnapsack {
  knap::KnapsackInstance instance;
  std::vector<double> powers;          // p_i(D) for every unit
  std::vector<std::size_t> item_unit;  // item index -> unit index
  std::vector<std::uint8_t> forced_off;

  /// Maps a switch-off selection back to a commitment (y = 1 - z).
  Commitment to_commitment(const knap::Selection& off_bits) const;
};

UcKnapsack build_knapsack(const UcInstance& uc, double marginal);

enum class ScanCostMode {
  kRedispatch,       // re-optimize committed powers before costing (default)
  kMarginalPowers,   // cost at the marginal-induced powers
};

struct ScanPoint {
  double marginal = 0.0;
  double cost = std::numeric_limits<double>::infinity();
  bool feasible = false;
};

struct ScanResult {
  std::vector<ScanPoint> points;  // the coarse input grid
  std::size_t best_index = 0;     // coarse point nearest the refined best
  Commitment best_commitment;
  Dispatch best_dispatch;
  double best_cost = std::numeric_limits<double>::infinity();
  double best_marginal = 0.0;
};

struct ScanSolver {
  std::function<knap::SolveResult(const knap::KnapsackInstance&)> solve;
  bool thread_safe = true;  // grid points run in parallel only when true
};

ScanSolver exact_scan_solver();   // branch and bound, generous budget
ScanSolver greedy_scan_solver();

struct ScanOptions {
  ScanCostMode mode = ScanCostMode::kRedispatch;
  /// Marginal-price iteration from each feasible grid point: re-solve the
  /// knapsack at the commitment's own dispatch marginal until no commitment
  /// improves. At lambda(y) the marginal-induced cost of y equals its
  /// re-dispatched cost while every competitor's induced cost bounds its
  /// re-dispatched cost from above, so each step's re-dispatched cost is
  /// non-increasing and the iteration stops at a self-consistent price. The
  /// optimal commitment is such a fixed point and is typically visible only
  /// at exactly its own marginal, which no fixed grid hits.
  bool iterate_marginal = true;
  std::size_t max_iterations = 25;
};

/// Sweeps the marginal-cost grid: at each value, builds the switch-off
/// knapsack, solves it, re-dispatches the resulting commitment and records
/// the cost (the Fig-1-style curve), then polishes the minimum with the
/// marginal-price iteration. Grid points where no feasible commitment
/// exists stay at +inf. Throws InfeasibleError when every grid point is
/// infeasible.
ScanResult solve_uc_via_scan(const UcInstance& uc, const std::vector<double>& marginal_grid,
                             const ScanSolver& solver, const ScanOptions& options = {});

/// Default 200-point uniform grid over [min B_i, max(B_i + 2 C_i p_max_i)],
/// which spans every clamping regime.
std::vector<double> default_marginal_grid(const UcInstance& uc, std::size_t points = 200);

struct UcSolution {
  Commitment commitment;
  Dispatch dispatch;
  double cost = std::numeric_limits<double>::infinity();
};

/// Exhaustive enumeration of all 2^n commitments with exact dispatch,
/// n <= 14. Commitments that cannot meet the load exactly are skipped.
UcSolution brute_force_uc(const UcInstance& uc);

struct UcGenRanges {
  double commit_lo = 10.0, commit_hi = 50.0;
  double linear_lo = 0.5, linear_hi = 1.5;
  double quad_lo = 0.01, quad_hi = 0.2;
  double p_min_lo = 10.0, p_min_hi = 20.0;
  double p_max_lo = 50.0, p_max_hi = 100.0;
};

/// Random instance with parameters uniform in the given ranges and load set
/// to load_factor * sum(p_max).
UcInstance random_uc_instance(std::size_t n, std::uint64_t seed, double load_factor = 0.5,
                              const UcGenRanges& ranges = {});

}  // namespace knapqaoa::uc
