// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace knapqaoa::sim {

using Amplitude = std::complex<double>;

constexpr std::size_t kDefaultMaxQubits = 22;

/// Dense statevector over n qubits, little-endian: bit i of the amplitude
/// index is qubit i, and rendered bitstrings put qubit 0 first. Gates never
/// renormalize; unitarity keeps the norm at 1.
class StateVector {
 public:
  explicit StateVector(std::size_t num_qubits, std::size_t max_qubits = kDefaultMaxQubits);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }

  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> amplitudes() { return amps_; }
  Amplitude& operator[](std::size_t idx) { return amps_[idx]; }
  const Amplitude& operator[](std::size_t idx) const { return amps_[idx]; }

  double norm_squared() const;

  static std::string index_to_bitstring(std::size_t index, std::size_t num_qubits);
  static std::size_t bitstring_to_index(const std::string& bits);

 private:
  std::size_t num_qubits_;
  std::vector<Amplitude> amps_;
};

/// Product state with qubit i in sqrt(1-p_i)|0> + sqrt(p_i)|1>.
StateVector init_product_state(std::span<const double> probs,
                               std::size_t max_qubits = kDefaultMaxQubits);

/// exp(-i angle Y/2) on one qubit.
void apply_ry(StateVector& state, std::size_t qubit, double angle);

/// exp(-i angle Z/2) on one qubit.
void apply_rz(StateVector& state, std::size_t qubit, double angle);

/// RY(angle) on target, restricted to the subspace where control reads
/// control_value (0 or 1).
void apply_controlled_ry(StateVector& state, std::size_t control, std::size_t target,
                         double angle, int control_value);

/// exp(-i angle Z): multiplies bit-0 components by e^{-i angle} and bit-1
/// components by e^{+i angle}. A cost layer is a loop of these with
/// angle = gamma * v_i.
void apply_phase_z(StateVector& state, std::size_t qubit, double angle);

/// Dense 4x4 unitary on (qa, qb); the local index is bit(qa) + 2*bit(qb).
using Matrix4 = std::array<std::array<Amplitude, 4>, 4>;
void apply_two_qubit(StateVector& state, std::size_t qa, std::size_t qb, const Matrix4& m);

/// Measured bitstrings with multiplicities.
struct SampleSet {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t shots = 0;

  std::string to_csv() const;  // header `bitstring,count`, rows in key order
  static SampleSet from_csv(const std::string& csv);
};

/// shots i.i.d. draws from |amp|^2 via inverse CDF; deterministic given seed.
SampleSet sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed);

/// |amp|^2 per basis index.
std::vector<double> probabilities(const StateVector& state);

/// Exact measurement distribution keyed by bitstring; entries below
/// probability_floor are dropped.
std::map<std::string, double> distribution(const StateVector& state,
                                           double probability_floor = 0.0);

}  // namespace knapqaoa::sim
