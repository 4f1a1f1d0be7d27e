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

#include <cmath>

#include "stabwit/stabilizer.hpp"

namespace stabwit {

/// An undirected multigraph stored as a symmetric adjacency matrix of edge
/// multiplicities with zero diagonal. Multiplicities are plain integers;
/// they are reduced mod d only when operators are generated for a given d,
/// so the same graph serves several local dimensions.
struct Multigraph {
  int n_vertices = 0;
  Eigen::MatrixXi adjacency;

  Multigraph() = default;

  explicit Multigraph(int n) : n_vertices(n), adjacency(Eigen::MatrixXi::Zero(n, n)) {
    if (n < 1) throw std::invalid_argument("Multigraph: need at least one vertex");
  }

  /// Vertices are 1-based; repeated calls accumulate multiplicity.
  void add_edge(int i, int j, int multiplicity = 1) {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw std::invalid_argument("Multigraph: self-loops are not allowed");
    if (multiplicity < 0) throw std::invalid_argument("Multigraph: negative multiplicity");
    adjacency(i - 1, j - 1) += multiplicity;
    adjacency(j - 1, i - 1) += multiplicity;
  }

  int multiplicity(int i, int j) const {
    check_vertex(i);
    check_vertex(j);
    return adjacency(i - 1, j - 1);
  }

  static Multigraph from_edges(int n, const std::vector<std::array<int, 3>>& edges) {
    Multigraph g(n);
    for (const auto& e : edges) g.add_edge(e[0], e[1], e[2]);
    return g;
  }

  static Multigraph star(int n) {
    Multigraph g(n);
    for (int j = 2; j <= n; ++j) g.add_edge(1, j);
    return g;
  }

  static Multigraph path(int n) {
    Multigraph g(n);
    for (int j = 1; j < n; ++j) g.add_edge(j, j + 1);
    return g;
  }

  static Multigraph cycle(int n) {
    Multigraph g = path(n);
    if (n >= 3) g.add_edge(n, 1);
    return g;
  }

 private:
  void check_vertex(int v) const {
    if (v < 1 || v > n_vertices) {
      throw std::out_of_range("Multigraph: vertex " + std::to_string(v) + " outside [1, " +
                              std::to_string(n_vertices) + "]");
    }
  }
};

/// Graph-state generators G_i = X_i prod_j Z_j^{A_ij mod d}. Always a valid,
/// independent, commuting set: each generator carries the unique X_i.
inline GeneratorSet graph_generators(const Multigraph& g, int d) {
  const int n = g.n_vertices;
  std::vector<PauliWord> gens;
  std::vector<std::string> labels;
  gens.reserve(n);
  for (int i = 1; i <= n; ++i) {
    PauliWord w = PauliWord::x_op(d, n, i);
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      w.set_z(j, g.adjacency(i - 1, j - 1));
    }
    gens.push_back(std::move(w));
    labels.push_back("G" + std::to_string(i));
  }
  GeneratorSet set(d, n, std::move(gens), std::move(labels));
  validate_pairwise_commutation(set);
  return set;
}

/// The stabilized graph-state vector, with amplitudes w^{tau(j)} / sqrt(d^N)
/// where tau sums A_rs * j_r * j_s over unordered vertex pairs r < s. The
/// unordered sum is the convention under which graph_generators stabilize
/// the state with eigenvalue +1.
inline StateVector graph_state_vector(const Multigraph& g, int d,
                                      long long cap = kDefaultDenseCap) {
  const int n = g.n_vertices;
  const long long dim = dense_dim(d, n, cap);
  StateVector psi(dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<int> digits(n, 0);
  for (long long idx = 0; idx < dim; ++idx) {
    long long tau = 0;
    for (int r = 0; r < n; ++r) {
      if (digits[r] == 0) continue;
      for (int s = r + 1; s < n; ++s) {
        tau += static_cast<long long>(g.adjacency(r, s)) * digits[r] * digits[s];
      }
    }
    psi(idx) = amp * omega_power(d, tau);
    for (int s = n - 1; s >= 0; --s) {
      if (++digits[s] < d) break;
      digits[s] = 0;
    }
  }
  return psi;
}

/// GHZ-type generators: prod_i X_i together with Z_{k-1} Z_k^dagger chains.
inline GeneratorSet ghz_generators(int n, int d) {
  if (n < 2) throw std::invalid_argument("ghz_generators: need N >= 2");
  std::vector<PauliWord> gens;
  PauliWord g1(d, n);
  for (int s = 1; s <= n; ++s) g1.set_x(s, 1);
  gens.push_back(g1);
  for (int k = 2; k <= n; ++k) {
    PauliWord gk(d, n);
    gk.set_z(k - 1, 1);
    gk.set_z(k, d - 1);
    gens.push_back(gk);
  }
  GeneratorSet set(d, n, std::move(gens));
  validate_pairwise_commutation(set);
  return set;
}

/// Linear-cluster generators: X on each site with Z on chain neighbours.
inline GeneratorSet cluster_generators(int n, int d) {
  if (n < 2) throw std::invalid_argument("cluster_generators: need N >= 2");
  std::vector<PauliWord> gens;
  for (int k = 1; k <= n; ++k) {
    PauliWord gk = PauliWord::x_op(d, n, k);
    if (k > 1) gk.set_z(k - 1, 1);
    if (k < n) gk.set_z(k + 1, 1);
    gens.push_back(std::move(gk));
  }
  GeneratorSet set(d, n, std::move(gens));
  validate_pairwise_commutation(set);
  return set;
}

/// The two-generator stabilizer {prod_i X_i, prod_i Z_i} on N = d qudits.
/// Its subspace has dimension d^{d-2}; for d = 2 it is a Bell state.
inline GeneratorSet nd_subspace_generators(int d) {
  const int n = d;
  PauliWord gx(d, n), gz(d, n);
  for (int s = 1; s <= n; ++s) {
    gx.set_x(s, 1);
    gz.set_z(s, 1);
  }
  GeneratorSet set(d, n, {gx, gz});
  validate_pairwise_commutation(set);
  return set;
}

/// Two-setting subspace stabilizer on N qudits: prod_i X_i plus Z blocks on
/// consecutive windows of d sites overlapping by one, the last window
/// closing with Z_N^r, r = d-1 - ((N-2) mod (d-1)). Generator count is
/// 1 + ceil((N-1)/(d-1)). Reduces to the GHZ set for d = 2 and to
/// nd_subspace_generators for N = d.
inline GeneratorSet opt_subspace_generators(int n, int d) {
  if (n < 2) throw std::invalid_argument("opt_subspace_generators: need N >= 2");
  if (!is_prime(d)) throw std::invalid_argument("opt_subspace_generators: d must be prime");
  const int z_count = (n - 2) / (d - 1) + 1;  // ceil((N-1)/(d-1))
  const int r = d - 1 - ((n - 2) % (d - 1));
  std::vector<PauliWord> gens;
  PauliWord g1(d, n);
  for (int s = 1; s <= n; ++s) g1.set_x(s, 1);
  gens.push_back(g1);
  for (int j = 1; j <= z_count; ++j) {
    const int start = (d - 1) * (j - 1) + 1;
    PauliWord gj(d, n);
    if (j < z_count) {
      const int end = (d - 1) * j + 1;  // full window of d sites
      for (int s = start; s <= end; ++s) gj.set_z(s, 1);
    } else {
      if (start > n - 1) {
        throw std::invalid_argument("opt_subspace_generators: ill-formed window for N=" +
                                    std::to_string(n) + ", d=" + std::to_string(d));
      }
      for (int s = start; s <= n - 1; ++s) gj.set_z(s, 1);
      gj.set_z(n, gj.mod_d(gj.z[n - 1] + r));
    }
    gens.push_back(std::move(gj));
  }
  GeneratorSet set(d, n, std::move(gens));
  validate_pairwise_commutation(set);
  return set;
}

/// The N-qubit W state (single excitation, symmetric).
inline StateVector w_state_vector(int n, long long cap = kDefaultDenseCap) {
  if (n < 2) throw std::invalid_argument("w_state_vector: need N >= 2");
  const long long dim = dense_dim(2, n, cap);
  StateVector psi = StateVector::Zero(dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int s = 0; s < n; ++s) psi(1LL << (n - 1 - s)) = amp;
  return psi;
}

/// The bit-flipped W state (single hole).
inline StateVector wbar_state_vector(int n, long long cap = kDefaultDenseCap) {
  if (n < 2) throw std::invalid_argument("wbar_state_vector: need N >= 2");
  const long long dim = dense_dim(2, n, cap);
  StateVector psi = StateVector::Zero(dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  const long long all_ones = dim - 1;
  for (int s = 0; s < n; ++s) psi(all_ones ^ (1LL << (n - 1 - s))) = amp;
  return psi;
}

}  // namespace stabwit
