// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "knapqaoa/knapsack.hpp"
#include "knapqaoa/statevector.hpp"

namespace knapqaoa::cop {

/// Joint distribution of two bits with marginals p1, p2 and correlation
/// theta in [-1, 1]; theta = 0 factorizes, theta = -1 maximizes
/// anti-correlation.
struct CopulaPmf {
  double q00 = 0.0, q01 = 0.0, q10 = 0.0, q11 = 0.0;
};

CopulaPmf copula_pmf(double p1, double p2, double theta);

/// Conditionals of the second bit given the first: q11/p1 and q01/(1-p1),
/// with the degenerate marginals p1 in {0, 1} falling back to p2.
double conditional_given_one(double p1, double p2, double theta);
double conditional_given_zero(double p1, double p2, double theta);

/// Per-qubit warm-start marginals plus the pair correlation strength.
struct CopulaSpec {
  std::vector<double> probs;
  double theta = -1.0;

  std::size_t size() const { return probs.size(); }
  void validate() const;
};

/// Qubit pairs grouped into sublayers; within a sublayer no qubit repeats, so
/// each sublayer's pair unitaries commute.
struct PairingScheme {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> sublayers;

  void validate(std::size_t num_qubits) const;

  /// Ring coupling split into an even sublayer (0,1),(2,3),... and an odd
  /// sublayer (1,2),(3,4),...,(n-1,0). Odd n drops the wrap pair (the odd
  /// cycle does not two-color); n = 1 has no pairs and n = 2 a single pair.
  static PairingScheme ring(std::size_t num_qubits);

  /// Disjoint neighbor pairs (0,1),(2,3),... in one sublayer.
  static PairingScheme disjoint_pairs(std::size_t num_qubits);
};

/// Per-layer (gamma, beta) schedule.
struct QaoaParams {
  std::vector<double> gammas;
  std::vector<double> betas;

  std::size_t depth() const { return gammas.size(); }
  void validate() const;
};

/// Two-bit copula state preparation: RY on qi, then RY on qj controlled on
/// qi = 1 with the given-one conditional, then controlled on qi = 0 with the
/// given-zero conditional. Acting on |00> the squared amplitudes reproduce
/// copula_pmf(p_i, p_j, theta).
void apply_rcop(sim::StateVector& state, std::size_t qi, std::size_t qj, double p_i, double p_j,
                double theta = -1.0);

/// Inverse of apply_rcop (the reversed sequence with negated angles).
void apply_rcop_dagger(sim::StateVector& state, std::size_t qi, std::size_t qj, double p_i,
                       double p_j, double theta = -1.0);

/// 4x4 matrix of the copula preparation over the pair basis
/// bit(qi) + 2*bit(qj), built column-by-column from the gate sequence.
sim::Matrix4 rcop_matrix(double p_i, double p_j, double theta = -1.0);

/// One mixer application: for each pair, the conjugated phase
/// R_cop (RZ(2 beta) x RZ(2 beta)) R_cop^dagger. beta = 0 is an exact no-op.
void apply_copula_mixer(sim::StateVector& state, double beta, const CopulaSpec& spec,
                        const PairingScheme& pairing);

/// Diagonal cost phase exp(-i gamma sum v_i Z_i): a phase_z per qubit with
/// angle gamma * v_i. gamma = 0 is an exact no-op.
void apply_cost_layer(sim::StateVector& state, double gamma, std::span<const double> values);

struct CircuitOptions {
  std::size_t max_qubits = sim::kDefaultMaxQubits;
  /// When set, the initial state is prepared pairwise with R_cop over the
  /// first sublayer of the pairing (an eigenstate of the matching mixer)
  /// instead of the independent per-qubit product.
  bool paired_initial_state = false;
};

/// Warm-started alternating circuit: product (or paired) initial state, then
/// per layer the cost phase followed by the copula mixer.
sim::StateVector run_circuit(const knap::KnapsackInstance& instance, const CopulaSpec& spec,
                             const PairingScheme& pairing, const QaoaParams& params,
                             const CircuitOptions& options = {});

/// Mean over all shots of (value if feasible else 0); a value to maximize.
double objective_from_samples(const knap::KnapsackInstance& instance,
                              const sim::SampleSet& samples);

/// Value and feasibility of every bitstring of a small instance, indexed by
/// the little-endian basis index. Backs the exact (infinite-shot) metrics.
struct InstanceTable {
  std::size_t num_items = 0;
  std::vector<double> value;
  std::vector<std::uint8_t> feasible;

  static InstanceTable build(const knap::KnapsackInstance& instance,
                             std::size_t max_items = sim::kDefaultMaxQubits);
};

/// Exact counterpart of objective_from_samples: sum of P(b) * value(b) over
/// feasible b.
double objective_from_distribution(const InstanceTable& table, const sim::StateVector& state);

struct ExactMetrics {
  double objective = 0.0;    // feasibility-masked expected value
  double valid_mass = 0.0;   // probability of sampling a feasible bitstring
  double best_value = -1.0;  // max feasible value with probability >= floor; -1 if none
  std::size_t best_index = 0;
};

ExactMetrics exact_metrics(const InstanceTable& table, const sim::StateVector& state,
                           double support_floor);

/// Expectation of the diagonal cost observable sum v_i Z_i (diagnostic only;
/// training uses the sampled, feasibility-masked objective).
double cost_observable_expectation(const knap::KnapsackInstance& instance,
                                   const sim::StateVector& state);

/// Gate-list description of the circuit as JSON: [{gate, qubits, angle}, ...].
std::string describe_circuit(const knap::KnapsackInstance& instance, const CopulaSpec& spec,
                             const PairingScheme& pairing, const QaoaParams& params);

}  // namespace knapqaoa::cop
