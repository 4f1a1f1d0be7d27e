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

#include <functional>
#include <random>

#include "stabwit/witness.hpp"

// Dense linear-algebra verification, independent of the symbolic path it
// cross-checks. Everything here works on explicit matrices and vectors at
// desk scale (d^N within the dense cap).

namespace stabwit::oracle {

/// A bipartition Q | Q-bar of sites {1..N}. Bit s-1 of `mask` is set iff
/// site s belongs to Q. Both sides must be nonempty.
struct Bipartition {
  uint32_t mask = 0;
  int n_sites = 0;

  Bipartition(uint32_t mask_, int n_sites_) : mask(mask_), n_sites(n_sites_) {
    if (n_sites_ < 2 || n_sites_ > 31) {
      throw std::invalid_argument("Bipartition: need 2 <= N <= 31 sites");
    }
    const uint32_t all = (1u << n_sites_) - 1;
    if ((mask_ & all) != mask_ || mask_ == 0 || mask_ == all) {
      throw std::invalid_argument("Bipartition: Q must be a nonempty proper subset");
    }
  }

  int q_size() const { return __builtin_popcount(mask); }
  int qbar_size() const { return n_sites - q_size(); }

  std::vector<int> q_sites() const {
    std::vector<int> s;
    for (int v = 1; v <= n_sites; ++v) {
      if (mask >> (v - 1) & 1u) s.push_back(v);
    }
    return s;
  }

  std::vector<int> qbar_sites() const {
    std::vector<int> s;
    for (int v = 1; v <= n_sites; ++v) {
      if (!(mask >> (v - 1) & 1u)) s.push_back(v);
    }
    return s;
  }
};

/// All proper bipartitions up to Q <-> Q-bar exchange (site 1 is kept in Q).
inline std::vector<Bipartition> all_bipartitions(int n_sites) {
  std::vector<Bipartition> out;
  const uint32_t all = (1u << n_sites) - 1;
  for (uint32_t mask = 1; mask < all; mask += 2) {  // odd masks contain site 1
    out.emplace_back(mask, n_sites);
  }
  return out;
}

/// Basis reindexing that moves the Q sites in front: perm[old] = new, where
/// the new index reads digits of Q sites (ascending) then Q-bar sites.
inline std::vector<long long> basis_permutation(int d, const Bipartition& bp) {
  std::vector<int> order = bp.q_sites();
  for (int v : bp.qbar_sites()) order.push_back(v);
  const int n = bp.n_sites;
  const long long dim = pow_ll(d, n);
  std::vector<long long> site_weight(n + 1);  // weight of site v in the old index
  for (int v = 1; v <= n; ++v) site_weight[v] = pow_ll(d, n - v);
  std::vector<long long> perm(dim);
  std::vector<int> digits(n, 0);
  for (long long old = 0; old < dim; ++old) {
    long long idx = 0;
    for (int v : order) idx = idx * d + digits[v - 1];
    perm[old] = idx;
    for (int s = n - 1; s >= 0; --s) {
      if (++digits[s] < d) break;
      digits[s] = 0;
    }
  }
  return perm;
}

// ---------------------------------------------------------------------------
// Dense rendering
// ---------------------------------------------------------------------------

namespace detail {

// All products prod_j G_j^{e_j} over the listed words, one per exponent
// vector in Z_d^m (no validation; words are assumed commuting).
inline void for_each_product(const std::vector<PauliWord>& words, int d, int n_sites,
                             const std::function<void(const PauliWord&)>& fn) {
  const int m = static_cast<int>(words.size());
  std::vector<std::vector<PauliWord>> pows(m);
  for (int i = 0; i < m; ++i) {
    pows[i].push_back(PauliWord::identity(d, n_sites));
    for (int e = 1; e < d; ++e) pows[i].push_back(multiply(pows[i].back(), words[i]));
  }
  const long long total = pow_ll(d, m);
  std::vector<int> e(m, 0);
  for (long long count = 0; count < total; ++count) {
    PauliWord prod = PauliWord::identity(d, n_sites);
    for (int i = 0; i < m; ++i) {
      if (e[i] != 0) prod = multiply(prod, pows[i][e[i]]);
    }
    fn(prod);
    for (int pos = 0; pos < m; ++pos) {
      if (++e[pos] < d) break;
      e[pos] = 0;
    }
  }
}

}  // namespace detail

/// Exact dense expansion of a witness. Colored blocks expand to subgroup
/// averages (d^{|C_i|} terms each) rather than chained matrix products.
inline DenseMatrix dense_witness(const Witness& w, long long cap = kDefaultDenseCap) {
  const long long dim = dense_dim(w.d, w.n_sites, cap);
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  m.diagonal().setConstant(w.constant);
  switch (w.kind) {
    case WitnessKind::Projector: {
      StabilizerGroup group(GeneratorSet(w.d, w.n_sites, w.generators));
      m -= projector(group, cap);
      break;
    }
    case WitnessKind::Colored: {
      for (const auto& cls : w.color_classes) {
        std::vector<PauliWord> words;
        for (int j : cls) words.push_back(w.generators[j]);
        const double scale =
            static_cast<double>(w.d) / static_cast<double>(pow_ll(w.d, words.size()));
        detail::for_each_product(words, w.d, w.n_sites, [&](const PauliWord& prod) {
          accumulate_word(m, prod, Complex(-scale, 0.0), cap);
        });
      }
      break;
    }
    case WitnessKind::GeneratorSum:
    case WitnessKind::Custom: {
      for (const auto& t : w.terms) accumulate_word(m, t.word, t.weight, cap);
      break;
    }
  }
  return m;
}

/// Dense form of  W - alpha * ((1/d) I - P)  built in one allocation, for
/// the positivity certificates at the largest dimensions. P is the
/// projector onto the subspace stabilized by the witness generators.
inline DenseMatrix dense_witness_minus_alpha_projector(const Witness& w, double alpha,
                                                       long long cap = kDefaultDenseCap) {
  DenseMatrix m = dense_witness(w, cap);
  m.diagonal().array() -= alpha / w.d;
  const StabilizerGroup group(GeneratorSet(w.d, w.n_sites, w.generators));
  const double scale = alpha / static_cast<double>(group.elements().size());
  for (const auto& elem : group.elements()) {
    accumulate_word(m, elem, Complex(scale, 0.0), cap);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

inline void require_hermitian(const DenseMatrix& m, double tol = 1e-10) {
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol) {
    throw std::invalid_argument("oracle: matrix is not Hermitian (deviation " +
                                std::to_string(dev) + ")");
  }
}

/// Full real spectrum of a Hermitian matrix, ascending.
inline Eigen::VectorXd hermitian_spectrum(const DenseMatrix& m, double herm_tol = 1e-10) {
  require_hermitian(m, herm_tol);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("oracle: eigensolver failed to converge");
  }
  return solver.eigenvalues();
}

namespace detail {

// Lanczos with full reorthogonalization. The witness-difference operators
// this is used on have very few distinct eigenvalues, so the iteration
// terminates quickly; several random starts guard the stagnation test.
inline double lanczos_min_eigenvalue(const DenseMatrix& m, int max_iters, int num_starts,
                                     unsigned long long seed) {
  const long long n = m.rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double best = std::numeric_limits<double>::infinity();
  for (int start = 0; start < num_starts; ++start) {
    DenseMatrix basis(n, max_iters + 1);
    Eigen::VectorXd diag(max_iters), offdiag(max_iters);
    StateVector v(n);
    for (long long i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    basis.col(0) = v / v.norm();
    double current = std::numeric_limits<double>::infinity();
    double previous = current;
    int stagnant = 0;
    for (int j = 0; j < max_iters; ++j) {
      StateVector w = m * basis.col(j);
      diag(j) = basis.col(j).dot(w).real();
      w -= diag(j) * basis.col(j);
      if (j > 0) w -= offdiag(j - 1) * basis.col(j - 1);
      for (int pass = 0; pass < 2; ++pass) {
        w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * w);
      }
      offdiag(j) = w.norm();
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(j + 1, j + 1);
      for (int i = 0; i <= j; ++i) {
        tri(i, i) = diag(i);
        if (i < j) tri(i, i + 1) = tri(i + 1, i) = offdiag(i);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tiny(tri, Eigen::EigenvaluesOnly);
      current = tiny.eigenvalues()(0);
      if (offdiag(j) < 1e-13) break;  // Krylov space exhausted: exact on it
      stagnant = std::abs(current - previous) < 1e-13 * (1.0 + std::abs(current))
                     ? stagnant + 1
                     : 0;
      previous = current;
      if (stagnant >= 8) break;
      basis.col(j + 1) = w / offdiag(j);
    }
    best = std::min(best, current);
  }
  return best;
}

}  // namespace detail

/// Smallest eigenvalue of a Hermitian matrix. Uses the full solver at
/// moderate sizes and Lanczos beyond, where a full decomposition would
/// dominate the runtime of the verification suites.
inline double min_eigenvalue(const DenseMatrix& m, double herm_tol = 1e-10) {
  require_hermitian(m, herm_tol);
  if (m.rows() <= 1536) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
  }
  return detail::lanczos_min_eigenvalue(m, 240, 3, 0x5eed5eedULL);
}

// ---------------------------------------------------------------------------
// Bipartite structure
// ---------------------------------------------------------------------------

/// Singular values of the state reshaped to a |Q| x |Q-bar| matrix, sorted
/// nonincreasing. Their squares sum to 1 for a normalized state.
inline Eigen::VectorXd schmidt_coefficients(const StateVector& state, int d,
                                            const Bipartition& bp) {
  const long long dim = pow_ll(d, bp.n_sites);
  if (state.size() != dim) {
    throw std::invalid_argument("schmidt_coefficients: state has wrong dimension");
  }
  const auto perm = basis_permutation(d, bp);
  const long long dq = pow_ll(d, bp.q_size());
  const long long dqb = pow_ll(d, bp.qbar_size());
  DenseMatrix reshaped(dq, dqb);
  for (long long old = 0; old < dim; ++old) {
    const long long idx = perm[old];
    reshaped(idx / dqb, idx % dqb) = state(old);
  }
  Eigen::JacobiSVD<DenseMatrix> svd(reshaped);
  return svd.singularValues();
}

namespace detail {

// M with sites reordered so that Q forms the leading index block.
inline DenseMatrix permute_to_bipartition(const DenseMatrix& m, int d, const Bipartition& bp) {
  const auto perm = basis_permutation(d, bp);
  const long long dim = m.rows();
  DenseMatrix out(dim, dim);
  for (long long c = 0; c < dim; ++c) {
    for (long long r = 0; r < dim; ++r) out(perm[r], perm[c]) = m(r, c);
  }
  return out;
}

inline StateVector random_unit_vector(long long dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  StateVector v(dim);
  for (long long i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

}  // namespace detail

/// Lowest expectation of a Hermitian operator over product states across
/// the given bipartition, by alternating eigenvector optimization: fix one
/// side, minimize over the other via the conditioned operator's lowest
/// eigenvector, and alternate to convergence. Returns the best value over
/// `restarts` random initializations; an upper bound on the true minimum.
inline double min_product_expectation(const DenseMatrix& m, int d, const Bipartition& bp,
                                      int restarts = 20, unsigned long long seed = 0) {
  require_hermitian(m);
  const DenseMatrix mp = detail::permute_to_bipartition(m, d, bp);
  const long long dq = pow_ll(d, bp.q_size());
  const long long dqb = pow_ll(d, bp.qbar_size());
  std::mt19937_64 rng(seed);
  double best = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < std::max(restarts, 1); ++attempt) {
    StateVector b = detail::random_unit_vector(dqb, rng);
    StateVector a = detail::random_unit_vector(dq, rng);
    double value = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 500; ++iter) {
      // Condition on the Q-bar vector, minimize over Q.
      DenseMatrix aq = DenseMatrix::Zero(dq, dq);
      for (long long i = 0; i < dq; ++i) {
        for (long long j = 0; j < dq; ++j) {
          aq(i, j) = b.dot(mp.block(i * dqb, j * dqb, dqb, dqb) * b);
        }
      }
      Eigen::SelfAdjointEigenSolver<DenseMatrix> sa(aq);
      a = sa.eigenvectors().col(0);
      // Condition on the Q vector, minimize over Q-bar.
      DenseMatrix ab = DenseMatrix::Zero(dqb, dqb);
      for (long long i = 0; i < dq; ++i) {
        for (long long j = 0; j < dq; ++j) {
          ab += std::conj(a(i)) * a(j) * mp.block(i * dqb, j * dqb, dqb, dqb);
        }
      }
      Eigen::SelfAdjointEigenSolver<DenseMatrix> sb(ab);
      b = sb.eigenvectors().col(0);
      const double next = sb.eigenvalues()(0);
      if (std::abs(next - value) < 1e-12) {
        value = next;
        break;
      }
      value = next;
    }
    best = std::min(best, value);
  }
  return best;
}

/// Best (lowest) product expectation across every bipartition.
inline double min_product_expectation_all(const DenseMatrix& m, int d, int n_sites,
                                          int restarts = 20, unsigned long long seed = 0) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& bp : all_bipartitions(n_sites)) {
    best = std::min(best, min_product_expectation(m, d, bp, restarts, seed));
  }
  return best;
}

/// Largest overlap of a product state (over any bipartition) with the
/// stabilized subspace, estimated by alternating optimization on -P.
inline double max_product_overlap_with_projector(const DenseMatrix& p, int d, int n_sites,
                                                 int restarts = 20,
                                                 unsigned long long seed = 0) {
  return -min_product_expectation_all(-p, d, n_sites, restarts, seed);
}

/// Numerical spot check of the generalized geometric measure of a
/// stabilized subspace: 1 minus the maximal product overlap with its
/// projector. For GME stabilizer subspaces the value is 1 - 1/d.
inline double ggm_spot_check(const StabilizerGroup& group, int restarts = 20,
                             unsigned long long seed = 0, long long cap = kDefaultDenseCap) {
  const DenseMatrix p = projector(group, cap);
  return 1.0 - max_product_overlap_with_projector(p, group.d(), group.n_sites(), restarts, seed);
}

// ---------------------------------------------------------------------------
// Expectations and robustness on explicit states
// ---------------------------------------------------------------------------

/// <state| M |state>, asserting the imaginary part is numerical noise.
inline double real_expectation(const DenseMatrix& m, const StateVector& state) {
  if (m.rows() != state.size()) {
    throw std::invalid_argument("real_expectation: dimension mismatch");
  }
  const Complex value = state.dot(m * state);
  if (std::abs(value.imag()) > 1e-10) {
    throw std::logic_error("real_expectation: expectation has imaginary part " +
                           std::to_string(value.imag()));
  }
  return value.real();
}

/// Tr(M rho) for a density operator, asserting realness.
inline double real_expectation_density(const DenseMatrix& m, const DenseMatrix& rho) {
  if (m.rows() != rho.rows()) {
    throw std::invalid_argument("real_expectation_density: dimension mismatch");
  }
  const Complex value = (m * rho).trace();
  if (std::abs(value.imag()) > 1e-10) {
    throw std::logic_error("real_expectation_density: trace has imaginary part " +
                           std::to_string(value.imag()));
  }
  return value.real();
}

/// <state| W |state> via dense rendering.
inline double expectation(const Witness& w, const StateVector& state,
                          long long cap = kDefaultDenseCap) {
  return real_expectation(dense_witness(w, cap), state);
}

/// Robustness of `w` against white noise on an explicit pure target:
/// dense expectation, symbolic trace.
inline RobustnessReport robustness_on_state(const Witness& w, const StateVector& state,
                                            long long cap = kDefaultDenseCap) {
  return threshold_probability(expectation(w, state, cap), symbolic_normalized_trace(w));
}

/// Same for an explicit density operator target.
inline RobustnessReport robustness_on_density(const Witness& w, const DenseMatrix& rho,
                                              long long cap = kDefaultDenseCap) {
  return threshold_probability(real_expectation_density(dense_witness(w, cap), rho),
                               symbolic_normalized_trace(w));
}

}  // namespace stabwit::oracle
