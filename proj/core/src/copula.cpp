// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "knapqaoa/copula.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "knapqaoa/errors.hpp"

namespace knapqaoa::cop {

namespace {

void check_prob(double p, const char* name) {
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

/// 2*asin(sqrt(p)), the RY angle that turns |0> into sqrt(1-p)|0>+sqrt(p)|1>.
double bias_angle(double p) { return 2.0 * std::asin(std::sqrt(clamp01(p))); }

}  // namespace

CopulaPmf copula_pmf(double p1, double p2, double theta) {
  check_prob(p1, "p1");
  check_prob(p2, "p2");
  if (!(theta >= -1.0) || !(theta <= 1.0))
    throw std::invalid_argument("theta must lie in [-1, 1]");
  const double coupling = theta * p1 * p2 * (1.0 - p1) * (1.0 - p2);
  CopulaPmf pmf;
  pmf.q00 = (1.0 - p1) * (1.0 - p2) + coupling;
  pmf.q01 = (1.0 - p1) * p2 - coupling;
  pmf.q10 = p1 * (1.0 - p2) - coupling;
  pmf.q11 = p1 * p2 + coupling;
  return pmf;
}

double conditional_given_one(double p1, double p2, double theta) {
  if (p1 <= 0.0 || p1 >= 1.0) return p2;
  return clamp01(copula_pmf(p1, p2, theta).q11 / p1);
}

double conditional_given_zero(double p1, double p2, double theta) {
  if (p1 <= 0.0 || p1 >= 1.0) return p2;
  return clamp01(copula_pmf(p1, p2, theta).q01 / (1.0 - p1));
}

void CopulaSpec::validate() const {
  if (probs.empty()) throw std::invalid_argument("copula spec has no qubit probabilities");
  for (double p : probs) check_prob(p, "marginal probability");
  if (!(theta >= -1.0) || !(theta <= 1.0))
    throw std::invalid_argument("theta must lie in [-1, 1]");
}

void PairingScheme::validate(std::size_t num_qubits) const {
  for (const auto& sublayer : sublayers) {
    std::vector<std::uint8_t> used(num_qubits, 0);
    for (const auto& [a, b] : sublayer) {
      if (a >= num_qubits || b >= num_qubits)
        throw std::invalid_argument("pairing references a qubit out of range");
      if (a == b) throw std::invalid_argument("pairing contains a self-pair");
      if (used[a] || used[b])
        throw std::invalid_argument("qubit appears twice within a sublayer");
      used[a] = used[b] = 1;
    }
  }
}

PairingScheme PairingScheme::ring(std::size_t num_qubits) {
  PairingScheme scheme;
  if (num_qubits < 2) return scheme;
  if (num_qubits == 2) {
    scheme.sublayers.push_back({{0, 1}});
    return scheme;
  }
  std::vector<std::pair<std::size_t, std::size_t>> even, odd;
  for (std::size_t i = 0; i + 1 < num_qubits; i += 2) even.push_back({i, i + 1});
  for (std::size_t i = 1; i + 1 < num_qubits; i += 2) odd.push_back({i, i + 1});
  if (num_qubits % 2 == 0) odd.push_back({num_qubits - 1, 0});  // odd cycles don't two-color
  scheme.sublayers.push_back(std::move(even));
  scheme.sublayers.push_back(std::move(odd));
  return scheme;
}

PairingScheme PairingScheme::disjoint_pairs(std::size_t num_qubits) {
  PairingScheme scheme;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < num_qubits; i += 2) pairs.push_back({i, i + 1});
  if (!pairs.empty()) scheme.sublayers.push_back(std::move(pairs));
  return scheme;
}

void QaoaParams::validate() const {
  if (gammas.size() != betas.size())
    throw std::invalid_argument("gamma and beta schedules must have equal length");
}

void apply_rcop(sim::StateVector& state, std::size_t qi, std::size_t qj, double p_i, double p_j,
                double theta) {
  check_prob(p_i, "p_i");
  check_prob(p_j, "p_j");
  sim::apply_ry(state, qi, bias_angle(p_i));
  sim::apply_controlled_ry(state, qi, qj, bias_angle(conditional_given_one(p_i, p_j, theta)), 1);
  sim::apply_controlled_ry(state, qi, qj, bias_angle(conditional_given_zero(p_i, p_j, theta)), 0);
}

void apply_rcop_dagger(sim::StateVector& state, std::size_t qi, std::size_t qj, double p_i,
                       double p_j, double theta) {
  check_prob(p_i, "p_i");
  check_prob(p_j, "p_j");
  sim::apply_controlled_ry(state, qi, qj, -bias_angle(conditional_given_zero(p_i, p_j, theta)), 0);
  sim::apply_controlled_ry(state, qi, qj, -bias_angle(conditional_given_one(p_i, p_j, theta)), 1);
  sim::apply_ry(state, qi, -bias_angle(p_i));
}

sim::Matrix4 rcop_matrix(double p_i, double p_j, double theta) {
  sim::Matrix4 m{};
  for (std::size_t col = 0; col < 4; ++col) {
    sim::StateVector scratch(2);
    scratch[0] = sim::Amplitude{0, 0};
    scratch[col] = sim::Amplitude{1, 0};
    apply_rcop(scratch, 0, 1, p_i, p_j, theta);
    for (std::size_t row = 0; row < 4; ++row) m[row][col] = scratch[row];
  }
  return m;
}

namespace {

sim::Matrix4 mat4_mul(const sim::Matrix4& a, const sim::Matrix4& b) {
  sim::Matrix4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      sim::Amplitude acc{0, 0};
      for (int k = 0; k < 4; ++k) acc += a[r][k] * b[k][c];
      out[r][c] = acc;
    }
  return out;
}

sim::Matrix4 mat4_dagger(const sim::Matrix4& a) {
  sim::Matrix4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r][c] = std::conj(a[c][r]);
  return out;
}

/// R_cop (RZ(2b) x RZ(2b)) R_cop^dagger as one pair unitary. The inner phase
/// is diagonal with e^{-2ib} on |00> and e^{+2ib} on |11>.
sim::Matrix4 mixer_pair_matrix(double p_i, double p_j, double theta, double beta) {
  const sim::Matrix4 r = rcop_matrix(p_i, p_j, theta);
  sim::Matrix4 phased = mat4_dagger(r);
  const sim::Amplitude low = std::polar(1.0, -2.0 * beta);
  const sim::Amplitude high = std::polar(1.0, 2.0 * beta);
  for (int c = 0; c < 4; ++c) {
    phased[0][c] *= low;
    phased[3][c] *= high;
  }
  return mat4_mul(r, phased);
}

}  // namespace

void apply_copula_mixer(sim::StateVector& state, double beta, const CopulaSpec& spec,
                        const PairingScheme& pairing) {
  spec.validate();
  pairing.validate(state.num_qubits());
  if (spec.size() != state.num_qubits())
    throw std::invalid_argument("copula spec size does not match qubit count");
  if (beta == 0.0) return;  // exp(0) is the identity, exactly
  for (const auto& sublayer : pairing.sublayers) {
    for (const auto& [i, j] : sublayer) {
      const sim::Matrix4 m = mixer_pair_matrix(spec.probs[i], spec.probs[j], spec.theta, beta);
      sim::apply_two_qubit(state, i, j, m);
    }
  }
}

void apply_cost_layer(sim::StateVector& state, double gamma, std::span<const double> values) {
  if (values.size() != state.num_qubits())
    throw std::invalid_argument("cost layer needs one value per qubit");
  if (gamma == 0.0) return;  // exact no-op
  for (std::size_t i = 0; i < values.size(); ++i)
    sim::apply_phase_z(state, i, gamma * values[i]);
}

sim::StateVector run_circuit(const knap::KnapsackInstance& instance, const CopulaSpec& spec,
                             const PairingScheme& pairing, const QaoaParams& params,
                             const CircuitOptions& options) {
  instance.validate();
  spec.validate();
  params.validate();
  const std::size_t n = instance.size();
  if (spec.size() != n)
    throw std::invalid_argument("warm-start probabilities do not match item count");
  pairing.validate(n);

  sim::StateVector state(1);
  if (options.paired_initial_state && !pairing.sublayers.empty()) {
    state = sim::StateVector(n, options.max_qubits);
    std::vector<std::uint8_t> covered(n, 0);
    for (const auto& [i, j] : pairing.sublayers.front()) {
      apply_rcop(state, i, j, spec.probs[i], spec.probs[j], spec.theta);
      covered[i] = covered[j] = 1;
    }
    for (std::size_t q = 0; q < n; ++q)
      if (!covered[q]) sim::apply_ry(state, q, bias_angle(spec.probs[q]));
  } else {
    state = sim::init_product_state(spec.probs, options.max_qubits);
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = instance.items[i].value;
  for (std::size_t layer = 0; layer < params.depth(); ++layer) {
    apply_cost_layer(state, params.gammas[layer], values);
    apply_copula_mixer(state, params.betas[layer], spec, pairing);
  }
  return state;
}

double objective_from_samples(const knap::KnapsackInstance& instance,
                              const sim::SampleSet& samples) {
  if (samples.shots == 0) return 0.0;
  double mass = 0.0;
  for (const auto& [bits, count] : samples.counts) {
    const auto ev = knap::evaluate(instance, knap::Selection::from_string(bits));
    if (ev.feasible) mass += ev.value * static_cast<double>(count);
  }
  return mass / static_cast<double>(samples.shots);
}

InstanceTable InstanceTable::build(const knap::KnapsackInstance& instance,
                                   std::size_t max_items) {
  instance.validate();
  const std::size_t n = instance.size();
  if (n > max_items)
    throw ResourceError("bitstring table capped at " + std::to_string(max_items) + " items");
  InstanceTable table;
  table.num_items = n;
  const std::size_t dim = std::size_t{1} << n;
  table.value.assign(dim, 0.0);
  table.feasible.assign(dim, 0);
  std::vector<double> weight(dim, 0.0);
  table.feasible[0] = 1;
  for (std::size_t idx = 1; idx < dim; ++idx) {
    const std::size_t rest = idx & (idx - 1);  // clear lowest set bit
    const int item = std::countr_zero(idx);
    table.value[idx] = table.value[rest] + instance.items[item].value;
    weight[idx] = weight[rest] + instance.items[item].weight;
    table.feasible[idx] = weight[idx] <= instance.capacity ? 1 : 0;
  }
  return table;
}

double objective_from_distribution(const InstanceTable& table, const sim::StateVector& state) {
  if (state.dimension() != table.value.size())
    throw std::invalid_argument("state dimension does not match table");
  const auto amps = state.amplitudes();
  double total = 0.0;
  for (std::size_t idx = 0; idx < amps.size(); ++idx)
    if (table.feasible[idx]) total += std::norm(amps[idx]) * table.value[idx];
  return total;
}

ExactMetrics exact_metrics(const InstanceTable& table, const sim::StateVector& state,
                           double support_floor) {
  if (state.dimension() != table.value.size())
    throw std::invalid_argument("state dimension does not match table");
  const auto amps = state.amplitudes();
  ExactMetrics metrics;
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    if (!table.feasible[idx]) continue;
    const double p = std::norm(amps[idx]);
    metrics.objective += p * table.value[idx];
    metrics.valid_mass += p;
    if (p >= support_floor && table.value[idx] > metrics.best_value) {
      metrics.best_value = table.value[idx];
      metrics.best_index = idx;
    }
  }
  return metrics;
}

double cost_observable_expectation(const knap::KnapsackInstance& instance,
                                   const sim::StateVector& state) {
  if (instance.size() != state.num_qubits())
    throw std::invalid_argument("instance size does not match qubit count");
  const auto amps = state.amplitudes();
  std::vector<double> one_mass(state.num_qubits(), 0.0);
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    const double p = std::norm(amps[idx]);
    if (p == 0.0) continue;
    std::size_t rest = idx;
    while (rest) {
      const int q = std::countr_zero(rest);
      one_mass[q] += p;
      rest &= rest - 1;
    }
  }
  double expectation = 0.0;
  for (std::size_t q = 0; q < state.num_qubits(); ++q)
    expectation += instance.items[q].value * (1.0 - 2.0 * one_mass[q]);
  return expectation;
}

std::string describe_circuit(const knap::KnapsackInstance& instance, const CopulaSpec& spec,
                             const PairingScheme& pairing, const QaoaParams& params) {
  instance.validate();
  spec.validate();
  params.validate();
  pairing.validate(instance.size());
  nlohmann::json gates = nlohmann::json::array();
  const auto push = [&](const char* gate, std::vector<std::size_t> qubits, double angle) {
    gates.push_back({{"gate", gate}, {"qubits", qubits}, {"angle", angle}});
  };
  const double theta = spec.theta;
  for (std::size_t q = 0; q < spec.size(); ++q) push("ry", {q}, bias_angle(spec.probs[q]));
  for (std::size_t layer = 0; layer < params.depth(); ++layer) {
    for (std::size_t q = 0; q < instance.size(); ++q)
      push("phase_z", {q}, params.gammas[layer] * instance.items[q].value);
    for (const auto& sublayer : pairing.sublayers) {
      for (const auto& [i, j] : sublayer) {
        const double a_i = bias_angle(spec.probs[i]);
        const double a_one = bias_angle(conditional_given_one(spec.probs[i], spec.probs[j], theta));
        const double a_zero =
            bias_angle(conditional_given_zero(spec.probs[i], spec.probs[j], theta));
        push("cry0", {i, j}, -a_zero);
        push("cry1", {i, j}, -a_one);
        push("ry", {i}, -a_i);
        push("rz", {i}, 2.0 * params.betas[layer]);
        push("rz", {j}, 2.0 * params.betas[layer]);
        push("ry", {i}, a_i);
        push("cry1", {i, j}, a_one);
        push("cry0", {i, j}, a_zero);
      }
    }
  }
  return gates.dump(2);
}

}  // namespace knapqaoa::cop
