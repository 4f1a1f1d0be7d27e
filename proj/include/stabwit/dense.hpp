// Copyright 2026 The stabwit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include "stabwit/pauli.hpp"

namespace stabwit {

using DenseMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Largest d^N rendered densely unless a caller overrides the cap.
inline constexpr long long kDefaultDenseCap = 4096;

/// d^N with a cap check; throws when the dense dimension would exceed `cap`.
inline long long dense_dim(int d, int n_sites, long long cap = kDefaultDenseCap) {
  const long long dim = pow_ll(d, n_sites);
  if (dim > cap) {
    throw std::invalid_argument("dense_dim: d^N = " + std::to_string(dim) +
                                " exceeds cap " + std::to_string(cap));
  }
  return dim;
}

/// A Weyl-Heisenberg word acts on the computational basis as a generalized
/// permutation: column j maps to a single row with a root-of-unity phase.
/// Site 1 is the most significant digit of the basis index.
struct WordAction {
  int d = 2;
  long long dim = 0;
  std::vector<long long> row_of_col;
  std::vector<int> phase_exp;  // exponent of w per column
};

inline WordAction word_action(const PauliWord& w, long long cap = kDefaultDenseCap) {
  WordAction a;
  a.d = w.d;
  a.dim = dense_dim(w.d, w.n_sites(), cap);
  a.row_of_col.resize(a.dim);
  a.phase_exp.resize(a.dim);
  const int n = w.n_sites();
  std::vector<int> digits(n, 0);
  for (long long col = 0; col < a.dim; ++col) {
    long long zdot = 0;
    long long row = 0;
    for (int s = 0; s < n; ++s) {
      zdot += static_cast<long long>(w.z[s]) * digits[s];
      row = row * w.d + (digits[s] + w.x[s]) % w.d;
    }
    a.row_of_col[col] = row;
    a.phase_exp[col] = w.mod_d(w.phase + zdot);
    for (int s = n - 1; s >= 0; --s) {  // odometer, least significant site last
      if (++digits[s] < w.d) break;
      digits[s] = 0;
    }
  }
  return a;
}

/// Exact dense rendering with X = sum_i |i+1><i| and Z = sum_i w^i |i><i|.
inline DenseMatrix to_dense(const PauliWord& w, long long cap = kDefaultDenseCap) {
  const WordAction a = word_action(w, cap);
  DenseMatrix m = DenseMatrix::Zero(a.dim, a.dim);
  for (long long col = 0; col < a.dim; ++col) {
    m(a.row_of_col[col], col) = omega_power(a.d, a.phase_exp[col]);
  }
  return m;
}

/// w |psi>, in O(d^N) using the generalized-permutation action.
inline StateVector apply_word(const PauliWord& w, const StateVector& psi,
                              long long cap = kDefaultDenseCap) {
  const WordAction a = word_action(w, cap);
  if (psi.size() != a.dim) throw std::invalid_argument("apply_word: dimension mismatch");
  StateVector out = StateVector::Zero(a.dim);
  for (long long col = 0; col < a.dim; ++col) {
    out(a.row_of_col[col]) = omega_power(a.d, a.phase_exp[col]) * psi(col);
  }
  return out;
}

/// w * M (left multiplication), in O(d^{2N}).
inline DenseMatrix apply_word_left(const PauliWord& w, const DenseMatrix& m,
                                   long long cap = kDefaultDenseCap) {
  const WordAction a = word_action(w, cap);
  if (m.rows() != a.dim) throw std::invalid_argument("apply_word_left: dimension mismatch");
  DenseMatrix out(a.dim, m.cols());
  for (long long col = 0; col < a.dim; ++col) {
    out.row(a.row_of_col[col]) = omega_power(a.d, a.phase_exp[col]) * m.row(col);
  }
  return out;
}

/// Adds `weight * dense(w)` into `acc`, touching only the d^N nonzeros.
inline void accumulate_word(DenseMatrix& acc, const PauliWord& w, Complex weight,
                            long long cap = kDefaultDenseCap) {
  const WordAction a = word_action(w, cap);
  if (acc.rows() != a.dim || acc.cols() != a.dim) {
    throw std::invalid_argument("accumulate_word: dimension mismatch");
  }
  for (long long col = 0; col < a.dim; ++col) {
    acc(a.row_of_col[col], col) += weight * omega_power(a.d, a.phase_exp[col]);
  }
}

}  // namespace stabwit
