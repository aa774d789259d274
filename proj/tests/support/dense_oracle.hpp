// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0
//
// Reference gate semantics built as explicit 2^n x 2^n matrices. Kept
// independent of the strided kernels in the simulator: every gate becomes a
// dense matrix (entry-by-entry delta products) applied by full matrix-vector
// multiplication.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "knapqaoa/statevector.hpp"

namespace oracle {

using Amp = std::complex<double>;
using Matrix = std::vector<std::vector<Amp>>;
using Vector = std::vector<Amp>;

inline Matrix identity(std::size_t dim) {
  Matrix m(dim, Vector(dim, Amp{0, 0}));
  for (std::size_t i = 0; i < dim; ++i) m[i][i] = Amp{1, 0};
  return m;
}

inline int bit_of(std::size_t index, std::size_t qubit) {
  return static_cast<int>((index >> qubit) & 1u);
}

/// Embeds a 2x2 gate acting on `qubit` of an n-qubit register.
inline Matrix embed_single(std::size_t n, std::size_t qubit, const Amp u[2][2]) {
  const std::size_t dim = std::size_t{1} << n;
  Matrix m(dim, Vector(dim, Amp{0, 0}));
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~(std::size_t{1} << qubit)) != (c & ~(std::size_t{1} << qubit))) continue;
      m[r][c] = u[bit_of(r, qubit)][bit_of(c, qubit)];
    }
  return m;
}

/// Controlled 2x2 gate: identity on the subspace where the control qubit
/// differs from control_value.
inline Matrix embed_controlled(std::size_t n, std::size_t control, std::size_t target,
                               int control_value, const Amp u[2][2]) {
  const std::size_t dim = std::size_t{1} << n;
  Matrix m(dim, Vector(dim, Amp{0, 0}));
  const std::size_t target_mask = std::size_t{1} << target;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~target_mask) != (c & ~target_mask)) continue;
      if (bit_of(r, control) != control_value) {
        m[r][c] = (r == c) ? Amp{1, 0} : Amp{0, 0};
      } else {
        m[r][c] = u[bit_of(r, target)][bit_of(c, target)];
      }
    }
  return m;
}

/// Embeds a 4x4 gate over (qa, qb) with local index bit(qa) + 2*bit(qb).
inline Matrix embed_two_qubit(std::size_t n, std::size_t qa, std::size_t qb,
                              const knapqaoa::sim::Matrix4& u) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t pair_mask = (std::size_t{1} << qa) | (std::size_t{1} << qb);
  Matrix m(dim, Vector(dim, Amp{0, 0}));
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~pair_mask) != (c & ~pair_mask)) continue;
      const int lr = bit_of(r, qa) + 2 * bit_of(r, qb);
      const int lc = bit_of(c, qa) + 2 * bit_of(c, qb);
      m[r][c] = u[lr][lc];
    }
  return m;
}

inline Matrix ry_matrix(std::size_t n, std::size_t qubit, double angle) {
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
  const Amp u[2][2] = {{Amp{c, 0}, Amp{-s, 0}}, {Amp{s, 0}, Amp{c, 0}}};
  return embed_single(n, qubit, u);
}

inline Matrix rz_matrix(std::size_t n, std::size_t qubit, double angle) {
  const Amp u[2][2] = {{std::polar(1.0, -0.5 * angle), Amp{0, 0}},
                       {Amp{0, 0}, std::polar(1.0, 0.5 * angle)}};
  return embed_single(n, qubit, u);
}

inline Matrix phase_z_matrix(std::size_t n, std::size_t qubit, double angle) {
  return rz_matrix(n, qubit, 2.0 * angle);
}

inline Matrix cry_matrix(std::size_t n, std::size_t control, std::size_t target, double angle,
                         int control_value) {
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
  const Amp u[2][2] = {{Amp{c, 0}, Amp{-s, 0}}, {Amp{s, 0}, Amp{c, 0}}};
  return embed_controlled(n, control, target, control_value, u);
}

inline Vector apply(const Matrix& m, const Vector& v) {
  Vector out(v.size(), Amp{0, 0});
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  return out;
}

inline Vector state_to_vector(const knapqaoa::sim::StateVector& state) {
  const auto amps = state.amplitudes();
  return Vector(amps.begin(), amps.end());
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace oracle
