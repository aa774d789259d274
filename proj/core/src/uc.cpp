// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "knapqaoa/uc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "knapqaoa/errors.hpp"
#include "knapqaoa/knapsack_solvers.hpp"
#include "knapqaoa/parallel.hpp"
#include "knapqaoa/rng.hpp"

namespace knapqaoa::uc {

namespace {
constexpr double kPowerTol = 1e-9;
}

void UcInstance::validate() const {
  if (units.empty()) throw std::invalid_argument("uc instance has no units");
  if (!(load > 0.0) || !std::isfinite(load))
    throw std::invalid_argument("load must be positive");
  double max_total = 0.0;
  for (std::size_t i = 0; i < units.size(); ++i) {
    const UcUnit& u = units[i];
    const std::string tag = "unit " + std::to_string(i);
    if (!(u.quadratic_cost > 0.0))
      throw std::invalid_argument(tag + ": quadratic cost must be strictly positive");
    if (u.commit_cost < 0.0 || u.linear_cost < 0.0)
      throw std::invalid_argument(tag + ": costs must be nonnegative");
    if (!(0.0 <= u.p_min) || !(u.p_min <= u.p_max))
      throw std::invalid_argument(tag + ": requires 0 <= p_min <= p_max");
    max_total += u.p_max;
  }
  if (max_total < load)
    throw std::invalid_argument("total p_max cannot cover the load");
}

std::string Commitment::to_string() const {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

double dispatch_at_marginal(const UcUnit& unit, double marginal) {
  const double interior = (marginal - unit.linear_cost) / (2.0 * unit.quadratic_cost);
  return std::clamp(interior, unit.p_min, unit.p_max);
}

double uc_cost(const UcInstance& uc, const Commitment& commitment, const Dispatch& dispatch) {
  if (commitment.bits.size() != uc.size() || dispatch.powers.size() != uc.size())
    throw std::invalid_argument("commitment/dispatch length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < uc.size(); ++i) {
    const double p = dispatch.powers[i];
    if (!commitment.bits[i]) {
      if (std::abs(p) > kPowerTol)
        throw std::invalid_argument("unit " + std::to_string(i) + " is off but dispatched");
      continue;
    }
    const UcUnit& u = uc.units[i];
    if (p < u.p_min - kPowerTol || p > u.p_max + kPowerTol)
      throw std::invalid_argument("unit " + std::to_string(i) + " dispatched outside its limits");
    total += u.cost_at(p);
  }
  return total;
}

std::pair<Dispatch, MarginalParam> exact_dispatch(const UcInstance& uc,
                                                  const Commitment& commitment) {
  if (commitment.bits.size() != uc.size())
    throw std::invalid_argument("commitment length mismatch");
  double sum_min = 0.0, sum_max = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < uc.size(); ++i) {
    if (!commitment.bits[i]) continue;
    const UcUnit& u = uc.units[i];
    sum_min += u.p_min;
    sum_max += u.p_max;
    lo = std::min(lo, u.marginal_at(u.p_min));
    hi = std::max(hi, u.marginal_at(u.p_max));
  }
  if (sum_max < uc.load - kPowerTol)
    throw InfeasibleError("committed units cannot meet the load");
  if (sum_min > uc.load + kPowerTol)
    throw InfeasibleError("minimum generation of committed units exceeds the load");

  lo -= 1.0;
  hi += 1.0;
  const auto committed_sum = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < uc.size(); ++i)
      if (commitment.bits[i]) s += dispatch_at_marginal(uc.units[i], lambda);
    return s;
  };
  double lambda = lo;
  for (int iter = 0; iter < 200; ++iter) {
    lambda = 0.5 * (lo + hi);
    const double s = committed_sum(lambda);
    if (std::abs(s - uc.load) <= kPowerTol) break;
    if (s < uc.load)
      lo = lambda;
    else
      hi = lambda;
  }

  Dispatch dispatch;
  dispatch.powers.assign(uc.size(), 0.0);
  MarginalParam marginal;
  marginal.value = lambda;
  marginal.xi.assign(uc.size(), 0.0);
  marginal.eta.assign(uc.size(), 0.0);
  for (std::size_t i = 0; i < uc.size(); ++i) {
    if (!commitment.bits[i]) continue;
    const UcUnit& u = uc.units[i];
    const double p = dispatch_at_marginal(u, lambda);
    dispatch.powers[i] = p;
    const double grad = u.marginal_at(p);
    if (p == u.p_min && grad > lambda) marginal.xi[i] = grad - lambda;
    if (p == u.p_max && grad < lambda) marginal.eta[i] = lambda - grad;
  }
  return {std::move(dispatch), std::move(marginal)};
}

bool verify_kkt(const UcInstance& uc, const Commitment& commitment, const Dispatch& dispatch,
                double marginal, double tol) {
  if (commitment.bits.size() != uc.size() || dispatch.powers.size() != uc.size())
    throw std::invalid_argument("commitment/dispatch length mismatch");
  for (std::size_t i = 0; i < uc.size(); ++i) {
    if (!commitment.bits[i]) continue;
    const UcUnit& u = uc.units[i];
    const double p = dispatch.powers[i];
    const double grad = u.marginal_at(p);
    const bool interior_ok = std::abs(grad - marginal) <= tol;
    const bool at_min_ok = grad > marginal - tol && std::abs(p - u.p_min) <= tol;
    const bool at_max_ok = grad < marginal + tol && std::abs(p - u.p_max) <= tol;
    if (!interior_ok && !at_min_ok && !at_max_ok) return false;
  }
  return true;
}

Commitment UcKnapsack::to_commitment(const knap::Selection& off_bits) const {
  if (off_bits.size() != item_unit.size())
    throw std::invalid_argument("selection length does not match knapsack item count");
  Commitment commitment;
  commitment.bits.assign(powers.size(), 1);
  for (std::size_t i = 0; i < powers.size(); ++i)
    if (forced_off[i]) commitment.bits[i] = 0;
  for (std::size_t j = 0; j < item_unit.size(); ++j)
    if (off_bits.bits[j]) commitment.bits[item_unit[j]] = 0;
  return commitment;
}

UcKnapsack build_knapsack(const UcInstance& uc, double marginal) {
  uc.validate();
  UcKnapsack result;
  result.powers.resize(uc.size());
  result.forced_off.assign(uc.size(), 0);
  double total = 0.0;
  for (std::size_t i = 0; i < uc.size(); ++i) {
    result.powers[i] = dispatch_at_marginal(uc.units[i], marginal);
    total += result.powers[i];
  }
  if (total < uc.load - kPowerTol)
    throw InfeasibleError("marginal-induced power " + std::to_string(total) +
                          " cannot cover the load");
  for (std::size_t i = 0; i < uc.size(); ++i) {
    const double p = result.powers[i];
    if (p == 0.0) {
      // Zero projected power: switching off saves the commitment cost and
      // consumes no capacity, so the unit is decided off up front.
      result.forced_off[i] = 1;
      continue;
    }
    result.item_unit.push_back(i);
    result.instance.items.push_back({uc.units[i].cost_at(p), p});
  }
  result.instance.capacity = std::max(total - uc.load, 0.0);
  result.instance.id = "uc-switchoff";
  return result;
}

std::vector<double> default_marginal_grid(const UcInstance& uc, std::size_t points) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const UcUnit& u : uc.units) {
    lo = std::min(lo, u.linear_cost);
    hi = std::max(hi, u.marginal_at(u.p_max));
  }
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = 0.5 * (lo + hi);
    return grid;
  }
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return grid;
}

ScanSolver exact_scan_solver() {
  return {[](const knap::KnapsackInstance& inst) {
            return knap::solve_branch_bound(inst, std::chrono::duration<double>(10.0));
          },
          true};
}

ScanSolver greedy_scan_solver() {
  return {[](const knap::KnapsackInstance& inst) { return knap::lazy_greedy(inst); }, true};
}

namespace {

struct PointOutcome {
  ScanPoint point;
  Commitment commitment;
  Dispatch dispatch;
};

std::vector<PointOutcome> scan_grid(const UcInstance& uc, const std::vector<double>& grid,
                                    const ScanSolver& solver, ScanCostMode mode) {
  std::vector<PointOutcome> outcomes(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t idx) {
        PointOutcome& out = outcomes[idx];
        out.point.marginal = grid[idx];
        try {
          const UcKnapsack kn = build_knapsack(uc, grid[idx]);
          knap::SolveResult off;
          if (!kn.instance.items.empty()) off = solver.solve(kn.instance);
          const Commitment commitment = kn.to_commitment(off.selection);
          if (mode == ScanCostMode::kRedispatch) {
            auto [dispatch, marginal] = exact_dispatch(uc, commitment);
            out.point.cost = uc_cost(uc, commitment, dispatch);
            out.dispatch = std::move(dispatch);
          } else {
            Dispatch dispatch;
            dispatch.powers.assign(uc.size(), 0.0);
            for (std::size_t i = 0; i < uc.size(); ++i)
              if (commitment.bits[i]) dispatch.powers[i] = kn.powers[i];
            out.point.cost = uc_cost(uc, commitment, dispatch);
            out.dispatch = std::move(dispatch);
          }
          out.commitment = commitment;
          out.point.feasible = true;
        } catch (const InfeasibleError&) {
          // leave the point at +inf
        }
      },
      solver.thread_safe);
  return outcomes;
}

}  // namespace

namespace {

/// One marginal-price descent: re-solve the knapsack at the incumbent's own
/// dispatch marginal until the re-dispatched cost stops improving. Returns
/// the final commitment/dispatch/cost (never worse than the input).
struct Polished {
  Commitment commitment;
  Dispatch dispatch;
  double cost;
  double marginal;
};

Polished polish_by_marginal_iteration(const UcInstance& uc, const ScanSolver& solver,
                                      Commitment commitment, Dispatch dispatch, double cost,
                                      double marginal, std::size_t max_iterations) {
  Polished best{std::move(commitment), std::move(dispatch), cost, marginal};
  double lambda = 0.0;
  {
    auto [redispatch, param] = exact_dispatch(uc, best.commitment);
    lambda = param.value;
  }
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    UcKnapsack kn;
    try {
      kn = build_knapsack(uc, lambda);
    } catch (const InfeasibleError&) {
      break;
    }
    knap::SolveResult off;
    if (!kn.instance.items.empty()) off = solver.solve(kn.instance);
    const Commitment candidate = kn.to_commitment(off.selection);
    if (candidate.bits == best.commitment.bits) break;
    try {
      auto [redispatch, param] = exact_dispatch(uc, candidate);
      const double candidate_cost = uc_cost(uc, candidate, redispatch);
      if (candidate_cost >= best.cost - 1e-12) break;
      best.commitment = candidate;
      best.dispatch = std::move(redispatch);
      best.cost = candidate_cost;
      best.marginal = lambda;
      lambda = param.value;
    } catch (const InfeasibleError&) {
      break;
    }
  }
  return best;
}

}  // namespace

ScanResult solve_uc_via_scan(const UcInstance& uc, const std::vector<double>& marginal_grid,
                             const ScanSolver& solver, const ScanOptions& options) {
  uc.validate();
  if (marginal_grid.empty()) throw std::invalid_argument("marginal grid is empty");
  if (!solver.solve) throw std::invalid_argument("scan solver is empty");

  auto coarse = scan_grid(uc, marginal_grid, solver, options.mode);

  // Polish every feasible point; results stay per-index, so the reduction
  // below is deterministic.
  std::vector<Polished> polished(coarse.size());
  if (options.iterate_marginal && options.mode == ScanCostMode::kRedispatch) {
    parallel_for(
        coarse.size(),
        [&](std::size_t idx) {
          if (!coarse[idx].point.feasible) return;
          polished[idx] = polish_by_marginal_iteration(
              uc, solver, coarse[idx].commitment, coarse[idx].dispatch, coarse[idx].point.cost,
              coarse[idx].point.marginal, options.max_iterations);
        },
        solver.thread_safe);
  } else {
    for (std::size_t idx = 0; idx < coarse.size(); ++idx)
      if (coarse[idx].point.feasible)
        polished[idx] = {coarse[idx].commitment, coarse[idx].dispatch, coarse[idx].point.cost,
                         coarse[idx].point.marginal};
  }

  ScanResult result;
  result.points.reserve(coarse.size());
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    result.points.push_back(coarse[i].point);
    if (coarse[i].point.feasible && polished[i].cost < result.best_cost) {
      result.best_cost = polished[i].cost;
      result.best_marginal = polished[i].marginal;
      result.best_index = i;
      result.best_commitment = polished[i].commitment;
      result.best_dispatch = polished[i].dispatch;
    }
  }
  if (!std::isfinite(result.best_cost))
    throw InfeasibleError("no feasible commitment on the marginal grid");
  return result;
}

UcSolution brute_force_uc(const UcInstance& uc) {
  uc.validate();
  const std::size_t n = uc.size();
  if (n > 14) throw ResourceError("uc brute force capped at 14 units, got " + std::to_string(n));
  UcSolution best;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Commitment commitment;
    commitment.bits.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) commitment.bits[i] = 1;
    try {
      auto [dispatch, marginal] = exact_dispatch(uc, commitment);
      const double cost = uc_cost(uc, commitment, dispatch);
      if (cost < best.cost) {
        best.cost = cost;
        best.commitment = std::move(commitment);
        best.dispatch = std::move(dispatch);
      }
    } catch (const InfeasibleError&) {
      continue;
    }
  }
  if (!std::isfinite(best.cost)) throw InfeasibleError("no commitment can meet the load exactly");
  return best;
}

UcInstance random_uc_instance(std::size_t n, std::uint64_t seed, double load_factor,
                              const UcGenRanges& ranges) {
  if (n == 0) throw std::invalid_argument("unit count must be at least 1");
  if (!(load_factor > 0.0) || load_factor > 1.0)
    throw std::invalid_argument("load factor must lie in (0, 1]");
  Rng rng(seed);
  UcInstance uc;
  uc.units.reserve(n);
  double total_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    UcUnit u;
    u.commit_cost = rng.uniform_real(ranges.commit_lo, ranges.commit_hi);
    u.linear_cost = rng.uniform_real(ranges.linear_lo, ranges.linear_hi);
    u.quadratic_cost = rng.uniform_real(ranges.quad_lo, ranges.quad_hi);
    u.p_min = rng.uniform_real(ranges.p_min_lo, ranges.p_min_hi);
    u.p_max = rng.uniform_real(ranges.p_max_lo, ranges.p_max_hi);
    if (u.p_max < u.p_min) std::swap(u.p_min, u.p_max);
    total_max += u.p_max;
    uc.units.push_back(u);
  }
  uc.load = load_factor * total_max;
  uc.validate();
  return uc;
}

}  // namespace knapqaoa::uc
