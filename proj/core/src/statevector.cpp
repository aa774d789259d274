// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "knapqaoa/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "knapqaoa/errors.hpp"
#include "knapqaoa/rng.hpp"

namespace knapqaoa::sim {

StateVector::StateVector(std::size_t num_qubits, std::size_t max_qubits)
    : num_qubits_(num_qubits) {
  if (num_qubits == 0) throw std::invalid_argument("state needs at least one qubit");
  if (num_qubits > max_qubits)
    throw ResourceError("statevector capped at " + std::to_string(max_qubits) + " qubits, got " +
                        std::to_string(num_qubits));
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
  amps_[0] = Amplitude{1.0, 0.0};
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const Amplitude& a : amps_) total += std::norm(a);
  return total;
}

std::string StateVector::index_to_bitstring(std::size_t index, std::size_t num_qubits) {
  std::string s(num_qubits, '0');
  for (std::size_t q = 0; q < num_qubits; ++q)
    if ((index >> q) & 1u) s[q] = '1';
  return s;
}

std::size_t StateVector::bitstring_to_index(const std::string& bits) {
  std::size_t index = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] != '0' && bits[q] != '1')
      throw std::invalid_argument("bitstring must contain only 0/1");
    if (bits[q] == '1') index |= std::size_t{1} << q;
  }
  return index;
}

StateVector init_product_state(std::span<const double> probs, std::size_t max_qubits) {
  for (double p : probs)
    if (!(p >= 0.0) || !(p <= 1.0))
      throw std::invalid_argument("qubit probability outside [0, 1]");
  StateVector state(probs.size(), max_qubits);
  auto amps = state.amplitudes();
  amps[0] = Amplitude{1.0, 0.0};
  // Extend one qubit at a time: amplitudes for indices with bit q set are
  // built from the lower half.
  std::size_t filled = 1;
  for (std::size_t q = 0; q < probs.size(); ++q) {
    const double a0 = std::sqrt(1.0 - probs[q]);
    const double a1 = std::sqrt(probs[q]);
    for (std::size_t i = 0; i < filled; ++i) {
      amps[filled + i] = amps[i] * a1;
      amps[i] *= a0;
    }
    filled <<= 1;
  }
  return state;
}

namespace {

// Applies [[m00, m01], [m10, m11]] to every (bit=0, bit=1) amplitude pair of
// the given qubit.
void apply_single(StateVector& state, std::size_t qubit, Amplitude m00, Amplitude m01,
                  Amplitude m10, Amplitude m11) {
  if (qubit >= state.num_qubits()) throw std::out_of_range("qubit index out of range");
  auto amps = state.amplitudes();
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t dim = amps.size();
  for (std::size_t base = 0; base < dim; base += stride << 1) {
    for (std::size_t offset = 0; offset < stride; ++offset) {
      const std::size_t i0 = base + offset;
      const std::size_t i1 = i0 + stride;
      const Amplitude a0 = amps[i0];
      const Amplitude a1 = amps[i1];
      amps[i0] = m00 * a0 + m01 * a1;
      amps[i1] = m10 * a0 + m11 * a1;
    }
  }
}

}  // namespace

void apply_ry(StateVector& state, std::size_t qubit, double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  apply_single(state, qubit, Amplitude{c, 0}, Amplitude{-s, 0}, Amplitude{s, 0}, Amplitude{c, 0});
}

void apply_rz(StateVector& state, std::size_t qubit, double angle) {
  const Amplitude phase0 = std::polar(1.0, -0.5 * angle);
  const Amplitude phase1 = std::polar(1.0, 0.5 * angle);
  apply_single(state, qubit, phase0, Amplitude{0, 0}, Amplitude{0, 0}, phase1);
}

void apply_phase_z(StateVector& state, std::size_t qubit, double angle) {
  apply_rz(state, qubit, 2.0 * angle);
}

void apply_controlled_ry(StateVector& state, std::size_t control, std::size_t target,
                         double angle, int control_value) {
  if (control >= state.num_qubits() || target >= state.num_qubits())
    throw std::out_of_range("qubit index out of range");
  if (control == target) throw std::invalid_argument("control and target must differ");
  if (control_value != 0 && control_value != 1)
    throw std::invalid_argument("control value must be 0 or 1");
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  auto amps = state.amplitudes();
  const std::size_t t_stride = std::size_t{1} << target;
  const std::size_t c_stride = std::size_t{1} << control;
  const std::size_t dim = amps.size();
  for (std::size_t base = 0; base < dim; base += t_stride << 1) {
    for (std::size_t offset = 0; offset < t_stride; ++offset) {
      const std::size_t i0 = base + offset;
      if (static_cast<int>((i0 / c_stride) & 1u) != control_value) continue;
      const std::size_t i1 = i0 + t_stride;
      const Amplitude a0 = amps[i0];
      const Amplitude a1 = amps[i1];
      amps[i0] = c * a0 - s * a1;
      amps[i1] = s * a0 + c * a1;
    }
  }
}

void apply_two_qubit(StateVector& state, std::size_t qa, std::size_t qb, const Matrix4& m) {
  if (qa >= state.num_qubits() || qb >= state.num_qubits())
    throw std::out_of_range("qubit index out of range");
  if (qa == qb) throw std::invalid_argument("two-qubit gate needs distinct qubits");
  auto amps = state.amplitudes();
  const std::size_t sa = std::size_t{1} << qa;
  const std::size_t sb = std::size_t{1} << qb;
  const std::size_t dim = amps.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & sa) || (i & sb)) continue;  // i is the 00 corner of its group
    const std::size_t idx[4] = {i, i | sa, i | sb, i | sa | sb};
    Amplitude in[4];
    for (int k = 0; k < 4; ++k) in[k] = amps[idx[k]];
    for (int r = 0; r < 4; ++r) {
      Amplitude acc{0, 0};
      for (int k = 0; k < 4; ++k) acc += m[r][k] * in[k];
      amps[idx[r]] = acc;
    }
  }
}

std::string SampleSet::to_csv() const {
  std::string out = "bitstring,count\n";
  for (const auto& [bits, count] : counts) out += bits + "," + std::to_string(count) + "\n";
  return out;
}

SampleSet SampleSet::from_csv(const std::string& csv) {
  SampleSet set;
  std::istringstream stream(csv);
  std::string line;
  bool header = true;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    if (header) {
      if (line != "bitstring,count")
        throw ParseError("samples csv: unexpected header '" + line + "'");
      header = false;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("samples csv: missing comma in '" + line + "'");
    const std::string bits = line.substr(0, comma);
    std::uint64_t count = 0;
    try {
      count = std::stoull(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError("samples csv: bad count in '" + line + "'");
    }
    set.counts[bits] += count;
    set.shots += count;
  }
  return set;
}

SampleSet sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  const auto amps = state.amplitudes();
  std::vector<double> cdf(amps.size());
  double running = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    running += std::norm(amps[i]);
    cdf[i] = running;
  }
  const double total = running;
  Rng rng(seed);
  SampleSet set;
  set.shots = shots;
  std::map<std::size_t, std::uint64_t> index_counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform01() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx =
        it == cdf.end() ? amps.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
    ++index_counts[idx];
  }
  for (const auto& [idx, count] : index_counts)
    set.counts[StateVector::index_to_bitstring(idx, state.num_qubits())] = count;
  return set;
}

std::vector<double> probabilities(const StateVector& state) {
  const auto amps = state.amplitudes();
  std::vector<double> probs(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) probs[i] = std::norm(amps[i]);
  return probs;
}

std::map<std::string, double> distribution(const StateVector& state, double probability_floor) {
  std::map<std::string, double> dist;
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p >= probability_floor)
      dist[StateVector::index_to_bitstring(i, state.num_qubits())] = p;
  }
  return dist;
}

}  // namespace knapqaoa::sim
