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

#include <map>

#include "stabwit/oracle.hpp"

// Qubit subspaces whose stabilizing operators are sums of Pauli strings
// rather than single strings: the W-state family and two small fixtures.
// The operator algebra stays symbolic (weighted word sums); dense forms are
// used for validation only.

namespace stabwit {

/// A real/complex-weighted sum of Pauli words on a fixed qubit register. In
/// canonical form every word carries phase exponent 0: phases are folded
/// into the weights by collect().
struct OperatorSum {
  int d = 2;
  int n_sites = 0;
  std::vector<WeightedWord> terms;

  OperatorSum() = default;
  OperatorSum(int d_, int n_sites_) : d(d_), n_sites(n_sites_) {}

  static OperatorSum identity(int d, int n_sites) {
    OperatorSum s(d, n_sites);
    s.terms.push_back({Complex(1.0, 0.0), PauliWord::identity(d, n_sites)});
    return s;
  }

  /// Coefficient of the identity word (0 if absent); sum must be collected.
  Complex identity_coefficient() const {
    for (const auto& t : terms) {
      if (t.word.is_phase_times_identity()) {
        return t.weight * omega_power(t.word.d, t.word.phase);
      }
    }
    return Complex(0.0, 0.0);
  }
};

/// Folds word phases into weights, merges equal words, drops negligible
/// terms, and orders terms by exponent signature.
inline OperatorSum collect(const OperatorSum& s, double drop_tol = 1e-14) {
  std::map<std::pair<std::vector<int>, std::vector<int>>, Complex> acc;
  for (const auto& t : s.terms) {
    const Complex w = t.weight * omega_power(t.word.d, t.word.phase);
    acc[{t.word.x, t.word.z}] += w;
  }
  OperatorSum out(s.d, s.n_sites);
  for (const auto& [key, weight] : acc) {
    if (std::abs(weight) < drop_tol) continue;
    PauliWord word(s.d, s.n_sites);
    word.x = key.first;
    word.z = key.second;
    out.terms.push_back({weight, word});
  }
  return out;
}

inline void check_same_space_sum(const OperatorSum& a, const OperatorSum& b) {
  if (a.d != b.d || a.n_sites != b.n_sites) {
    throw std::invalid_argument("OperatorSum: dimension mismatch");
  }
}

inline OperatorSum operator*(const OperatorSum& a, const OperatorSum& b) {
  check_same_space_sum(a, b);
  OperatorSum out(a.d, a.n_sites);
  out.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      out.terms.push_back({ta.weight * tb.weight, multiply(ta.word, tb.word)});
    }
  }
  return collect(out);
}

inline OperatorSum operator+(const OperatorSum& a, const OperatorSum& b) {
  check_same_space_sum(a, b);
  OperatorSum out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return collect(out);
}

inline OperatorSum operator*(Complex scale, const OperatorSum& a) {
  OperatorSum out = a;
  for (auto& t : out.terms) t.weight *= scale;
  return out;
}

inline OperatorSum dagger(const OperatorSum& a) {
  OperatorSum out(a.d, a.n_sites);
  for (const auto& t : a.terms) out.terms.push_back({std::conj(t.weight), dagger(t.word)});
  return collect(out);
}

/// Relabels site s as s + shift (mod N), cyclically.
inline OperatorSum shift_sites(const OperatorSum& a, int shift) {
  OperatorSum out(a.d, a.n_sites);
  const int n = a.n_sites;
  for (const auto& t : a.terms) {
    PauliWord w(a.d, n);
    w.phase = t.word.phase;
    for (int s = 0; s < n; ++s) {
      const int target = (s + shift % n + n) % n;
      w.x[target] = t.word.x[s];
      w.z[target] = t.word.z[s];
    }
    out.terms.push_back({t.weight, w});
  }
  return collect(out);
}

/// True iff the collected sum is exactly one identity term of weight ~1.
inline bool is_identity_sum(const OperatorSum& a, double tol = 1e-12) {
  const OperatorSum c = collect(a);
  return c.terms.size() == 1 && c.terms[0].word.is_phase_times_identity() &&
         std::abs(c.terms[0].weight - Complex(1.0, 0.0)) < tol;
}

inline DenseMatrix to_dense(const OperatorSum& a, long long cap = kDefaultDenseCap) {
  const long long dim = dense_dim(a.d, a.n_sites, cap);
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (const auto& t : a.terms) accumulate_word(m, t.word, t.weight, cap);
  return m;
}

// ---------------------------------------------------------------------------
// W-state unitaries and non-local stabilizers
// ---------------------------------------------------------------------------

/// A unitary mapping |0...0> to |W_N>, as a sum of N Pauli strings of
/// weight 1/sqrt(N). `layout` records which string pattern produced a valid
/// unitary (the even-N construction admits two Z-run layouts and only one
/// of them passes validation).
struct WStateUnitary {
  OperatorSum op;
  std::string layout;
};

namespace detail_nonlocal {

// One cyclic-shift family of strings: slot 0 is X, slots 1..z_run are Z,
// the rest identity, laid out on a ring of `slots` positions; each of the
// N terms takes the first N positions of the shifted ring string.
inline OperatorSum shifted_string_sum(int n, int slots, int z_run) {
  OperatorSum u(2, n);
  const double weight = 1.0 / std::sqrt(static_cast<double>(n));
  for (int shift = 0; shift < n; ++shift) {
    PauliWord w(2, n);
    for (int slot = 0; slot < slots; ++slot) {
      const int pos = (slot + shift) % slots;
      if (pos >= n) continue;  // the extra ring position is dropped
      if (slot == 0) {
        w.set_x(pos + 1, 1);
      } else if (slot <= z_run) {
        w.set_z(pos + 1, 1);
      }
    }
    u.terms.push_back({Complex(weight, 0.0), w});
  }
  return u;
}

// The term list maps |0..0> to |W_N> iff every term has exactly one X
// (which lands on distinct sites across terms) and no phase on |0..0>.
inline bool maps_zero_to_w(const OperatorSum& u) {
  if (static_cast<int>(u.terms.size()) != u.n_sites) return false;
  std::vector<bool> seen(u.n_sites, false);
  const double expect = 1.0 / std::sqrt(static_cast<double>(u.n_sites));
  for (const auto& t : u.terms) {
    if (std::abs(t.weight - Complex(expect, 0.0)) > 1e-12) return false;
    if (t.word.phase != 0) return false;
    int x_site = -1;
    for (int s = 0; s < u.n_sites; ++s) {
      if (t.word.x[s] == 1) {
        if (x_site >= 0) return false;
        x_site = s;
      }
    }
    if (x_site < 0 || seen[x_site]) return false;
    if (t.word.z[x_site] != 0) return false;  // Z under the X would phase |1>
    seen[x_site] = true;
  }
  return true;
}

inline bool is_valid_w_unitary(const OperatorSum& u) {
  return maps_zero_to_w(u) && is_identity_sum(dagger(u) * u);
}

}  // namespace detail_nonlocal

/// Builds the W-state unitary as a cyclically shifted Pauli-string sum.
/// Odd N uses a run of (N-1)/2 Z's after the X. Even N lays the strings on
/// a ring of N+1 positions and keeps the first N of each shift; of the two
/// admissible Z-run lengths (N/2 - 1 and N/2) the constructor picks the
/// first that yields a unitary, validated symbolically.
inline WStateUnitary w_unitary(int n) {
  if (n < 3) throw std::invalid_argument("w_unitary: need N >= 3");
  std::vector<std::pair<OperatorSum, std::string>> candidates;
  if (n % 2 == 1) {
    candidates.emplace_back(detail_nonlocal::shifted_string_sum(n, n, (n - 1) / 2),
                            "odd_run");
  } else {
    candidates.emplace_back(detail_nonlocal::shifted_string_sum(n, n + 1, n / 2 - 1),
                            "even_short_run");
    candidates.emplace_back(detail_nonlocal::shifted_string_sum(n, n + 1, n / 2),
                            "even_long_run");
  }
  for (auto& [op, layout] : candidates) {
    if (detail_nonlocal::is_valid_w_unitary(op)) {
      return WStateUnitary{collect(op), layout};
    }
  }
  throw std::logic_error("w_unitary: no string layout passed the unitarity/mapping check");
}

/// The N generators S_k = U Z_k U^dagger of the non-local stabilizer of
/// |W_N>. Each is Hermitian and unitary and fixes |W_N>; the dense
/// stabilization check runs whenever 2^N fits the cap.
inline std::vector<OperatorSum> w_nonlocal_stabilizer(int n,
                                                      long long cap = kDefaultDenseCap) {
  const WStateUnitary u = w_unitary(n);
  const OperatorSum udag = dagger(u.op);
  std::vector<OperatorSum> stabilizers;
  stabilizers.reserve(n);
  for (int k = 1; k <= n; ++k) {
    OperatorSum zk(2, n);
    zk.terms.push_back({Complex(1.0, 0.0), PauliWord::z_op(2, n, k)});
    OperatorSum sk = u.op * zk * udag;
    for (const auto& t : sk.terms) {
      const Complex w_dag = [&] {
        const PauliWord dw = dagger(t.word);
        for (const auto& o : sk.terms) {
          if (o.word.x == dw.x && o.word.z == dw.z) {
            return o.weight * omega_power(2, dw.phase);
          }
        }
        return Complex(0.0, 0.0);
      }();
      if (std::abs(w_dag - std::conj(t.weight)) > 1e-12) {
        throw std::logic_error("w_nonlocal_stabilizer: conjugated generator not Hermitian");
      }
    }
    stabilizers.push_back(std::move(sk));
  }
  if (pow_ll(2, n) <= cap) {
    const StateVector w_state = w_state_vector(n, cap);
    for (int k = 0; k < n; ++k) {
      const StateVector mapped = to_dense(stabilizers[k], cap) * w_state;
      if ((mapped - w_state).norm() > 1e-10) {
        throw std::logic_error("w_nonlocal_stabilizer: S_" + std::to_string(k + 1) +
                               " does not stabilize the W state");
      }
    }
  }
  return stabilizers;
}

// ---------------------------------------------------------------------------
// Witnesses
// ---------------------------------------------------------------------------

struct NonlocalWitness {
  Witness witness;                       // c*I + collected terms
  std::vector<OperatorSum> stabilizers;  // the stabilizing sums entering it
  RobustnessReport robustness;
};

namespace detail_nonlocal {

// c*I - sum of the given stabilizing operator sums, as a Custom witness,
// with the symbolic robustness report. Each stabilizer fixes the target, so
// the expectation is c - (number of sums); the trace picks up only identity
// coefficients.
inline NonlocalWitness stabilizer_sum_witness(double constant,
                                              std::vector<OperatorSum> stabilizers) {
  NonlocalWitness out;
  out.witness.kind = WitnessKind::Custom;
  out.witness.constant = constant;
  out.witness.d = stabilizers.front().d;
  out.witness.n_sites = stabilizers.front().n_sites;
  out.witness.num_generators = static_cast<int>(stabilizers.size());
  double trace = constant;
  for (const auto& s : stabilizers) {
    const Complex id_coeff = s.identity_coefficient();
    if (std::abs(id_coeff.imag()) > 1e-12) {
      throw std::logic_error("stabilizer_sum_witness: non-real identity coefficient");
    }
    trace -= id_coeff.real();
    for (const auto& t : s.terms) out.witness.terms.push_back({-t.weight, t.word});
  }
  out.stabilizers = std::move(stabilizers);
  out.robustness = threshold_probability(
      constant - static_cast<double>(out.stabilizers.size()), trace);
  return out;
}

}  // namespace detail_nonlocal

/// The W-state witness ((N^2-1)/N) I - sum_k S_k for odd N, with its
/// robustness report (p = 1/N^2).
inline NonlocalWitness w_witness(int n, long long cap = kDefaultDenseCap) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("w_witness: defined for odd N >= 3");
  }
  const double constant = (static_cast<double>(n) * n - 1.0) / n;
  return detail_nonlocal::stabilizer_sum_witness(constant, w_nonlocal_stabilizer(n, cap));
}

/// The two witnesses for the subspace spanned by |W_3> and its bit-flip:
/// a projector form (2/3) I - P_V and a stabilizer form
/// (5/3) I - S_1 S_2 - S_1 S_3 built from the W-state non-local stabilizer.
///
/// The stabilizer form has threshold 1/6. For the projector form this
/// library reports the threshold computed from the defining equation
/// (= 4/9); the externally reported value 8/21 is kept alongside for
/// comparison and is not asserted anywhere.
struct WWbarWitnesses {
  DenseMatrix subspace_projector;         // onto span{|W3>, |Wbar3>}
  double projector_constant = 2.0 / 3.0;
  RobustnessReport projector_robustness;
  double reported_projector_p_limit = 8.0 / 21.0;
  bool projector_p_limit_matches_reported = false;
  NonlocalWitness stabilizer;             // (5/3) I - S1S2 - S1S3
};

inline WWbarWitnesses wwbar_witnesses(long long cap = kDefaultDenseCap) {
  const int n = 3;
  WWbarWitnesses out;
  const StateVector w = w_state_vector(n, cap);
  const StateVector wbar = wbar_state_vector(n, cap);
  out.subspace_projector = w * w.adjoint() + wbar * wbar.adjoint();

  const auto s = w_nonlocal_stabilizer(n, cap);
  std::vector<OperatorSum> gens = {s[0] * s[1], s[0] * s[2]};
  for (const auto& g : gens) {
    for (const StateVector& target : {w, wbar}) {
      if ((to_dense(g, cap) * target - target).norm() > 1e-10) {
        throw std::logic_error("wwbar_witnesses: generator does not stabilize the subspace");
      }
    }
  }
  out.stabilizer = detail_nonlocal::stabilizer_sum_witness(5.0 / 3.0, std::move(gens));

  // Projector witness: expectation c - 1 on any state in V; trace from the
  // rank-2 projector.
  const double dim = static_cast<double>(out.subspace_projector.rows());
  const double normalized_trace = out.projector_constant - 2.0 / dim;
  out.projector_robustness =
      threshold_probability(out.projector_constant - 1.0, normalized_trace);
  out.projector_p_limit_matches_reported =
      std::abs(out.projector_robustness.p_limit - out.reported_projector_p_limit) < 1e-9;
  return out;
}

// ---------------------------------------------------------------------------
// GHZ/W fixture
// ---------------------------------------------------------------------------

/// Transcribed 8x8 matrices for the subspace spanned by |GHZ_3> and |W_3>:
/// a unitary U with U|000> = |W_3>, U|001> = |GHZ_3>, the rotated operators
/// S_i = U Z_i U^dagger for i = 1, 2, and the two witness constants. The
/// constructor self-checks unitarity, the conjugation identities, and
/// stabilization of the subspace.
struct GhzwFixture {
  DenseMatrix u, s1, s2;
  DenseMatrix subspace_projector;  // onto span{|GHZ_3>, |W_3>}
  double projector_constant = 0.5;
  double stabilizer_constant = 2.0 / 3.0;
  RobustnessReport projector_robustness;
  RobustnessReport stabilizer_robustness;
};

inline GhzwFixture ghzw_fixture() {
  GhzwFixture f;
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);
  f.u = DenseMatrix::Zero(8, 8);
  f.u(0, 1) = 1 / r2;
  f.u(0, 7) = 1 / r2;
  f.u(1, 0) = 1 / r3;
  f.u(1, 2) = 1 / r2;
  f.u(1, 4) = 1 / r6;
  f.u(2, 0) = 1 / r3;
  f.u(2, 2) = -1 / r2;
  f.u(2, 4) = 1 / r6;
  f.u(3, 3) = 1;
  f.u(4, 0) = 1 / r3;
  f.u(4, 4) = -2 / r6;
  f.u(5, 5) = 1;
  f.u(6, 6) = 1;
  f.u(7, 1) = 1 / r2;
  f.u(7, 7) = -1 / r2;

  f.s1 = DenseMatrix::Zero(8, 8);
  f.s1(0, 7) = 1;
  f.s1(1, 1) = 2.0 / 3;
  f.s1(1, 2) = -1.0 / 3;
  f.s1(1, 4) = 2.0 / 3;
  f.s1(2, 1) = -1.0 / 3;
  f.s1(2, 2) = 2.0 / 3;
  f.s1(2, 4) = 2.0 / 3;
  f.s1(3, 3) = 1;
  f.s1(4, 1) = 2.0 / 3;
  f.s1(4, 2) = 2.0 / 3;
  f.s1(4, 4) = -1.0 / 3;
  f.s1(5, 5) = -1;
  f.s1(6, 6) = -1;
  f.s1(7, 0) = 1;

  f.s2 = DenseMatrix::Zero(8, 8);
  f.s2(0, 7) = 1;
  f.s2(1, 2) = 1;
  f.s2(2, 1) = 1;
  f.s2(3, 3) = -1;
  f.s2(4, 4) = 1;
  f.s2(5, 5) = 1;
  f.s2(6, 6) = -1;
  f.s2(7, 0) = 1;

  if (!(f.u * f.u.adjoint()).isIdentity(1e-12)) {
    throw std::logic_error("ghzw_fixture: U is not unitary");
  }
  const DenseMatrix z1 = to_dense(PauliWord::z_op(2, 3, 1));
  const DenseMatrix z2 = to_dense(PauliWord::z_op(2, 3, 2));
  if ((f.s1 - f.u * z1 * f.u.adjoint()).cwiseAbs().maxCoeff() > 1e-12 ||
      (f.s2 - f.u * z2 * f.u.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::logic_error("ghzw_fixture: S_i do not match U Z_i U^dagger");
  }
  const StateVector w3 = f.u.col(0);
  const StateVector ghz3 = f.u.col(1);
  f.subspace_projector = ghz3 * ghz3.adjoint() + w3 * w3.adjoint();
  for (const DenseMatrix* s : {&f.s1, &f.s2}) {
    for (const StateVector* target : {&ghz3, &w3}) {
      if ((*s * *target - *target).norm() > 1e-12) {
        throw std::logic_error("ghzw_fixture: subspace is not stabilized");
      }
    }
  }
  // Both operators are traceless, so the normalized traces are the bare
  // constants.
  f.projector_robustness =
      threshold_probability(f.projector_constant - 1.0, f.projector_constant - 2.0 / 8.0);
  f.stabilizer_robustness =
      threshold_probability(f.stabilizer_constant - 2.0, f.stabilizer_constant -
                                                             (f.s1.trace().real() +
                                                              f.s2.trace().real()) /
                                                                 8.0);
  return f;
}

// ---------------------------------------------------------------------------
// Worst-case product overlap of a low-rank subspace
// ---------------------------------------------------------------------------

/// The largest product-state overlap guaranteed for every state of a
/// subspace: the minimum over states psi in V of the maximal squared
/// Schmidt coefficient of psi across bipartitions. Supports rank-1 and
/// rank-2 subspaces (grid plus local refinement over the state sphere for
/// rank 2); the full space returns 1 since it contains product states.
inline double max_product_overlap(const DenseMatrix& projector, int d, int n_sites,
                                  long long cap = kDefaultDenseCap) {
  const long long dim = dense_dim(d, n_sites, cap);
  if (projector.rows() != dim) {
    throw std::invalid_argument("max_product_overlap: projector has wrong dimension");
  }
  const long long rank = std::llround(projector.trace().real());
  if (rank == dim) return 1.0;
  const auto bipartitions = oracle::all_bipartitions(n_sites);
  const auto worst_schmidt_sq = [&](const StateVector& psi) {
    double worst = 0.0;
    for (const auto& bp : bipartitions) {
      const double top = oracle::schmidt_coefficients(psi, d, bp)(0);
      worst = std::max(worst, top * top);
    }
    return worst;
  };
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(projector);
  if (rank == 1) {
    return worst_schmidt_sq(es.eigenvectors().col(dim - 1));
  }
  if (rank != 2) {
    throw std::invalid_argument("max_product_overlap: only rank 1, 2 or full supported");
  }
  const StateVector v1 = es.eigenvectors().col(dim - 1);
  const StateVector v2 = es.eigenvectors().col(dim - 2);
  const auto value_at = [&](double theta, double phi) {
    const StateVector psi =
        std::cos(theta) * v1 + std::polar(std::sin(theta), phi) * v2;
    return worst_schmidt_sq(psi);
  };
  // Coarse grid over (theta, phi) on the state sphere, then shrinking
  // neighbourhood refinement around the best point.
  double best = std::numeric_limits<double>::infinity();
  double best_theta = 0.0, best_phi = 0.0;
  const double half_pi = 1.57079632679489662;
  for (int it = 0; it <= 24; ++it) {
    for (int ip = 0; ip < 32; ++ip) {
      const double theta = half_pi * it / 24;
      const double phi = 2.0 * half_pi * ip / 16.0;
      const double value = value_at(theta, phi);
      if (value < best) {
        best = value;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }
  double step_t = half_pi / 24, step_p = half_pi / 4;
  for (int round = 0; round < 24; ++round) {
    bool improved = false;
    for (int dt = -1; dt <= 1; ++dt) {
      for (int dp = -1; dp <= 1; ++dp) {
        if (dt == 0 && dp == 0) continue;
        const double theta = best_theta + dt * step_t;
        const double phi = best_phi + dp * step_p;
        const double value = value_at(theta, phi);
        if (value < best - 1e-15) {
          best = value;
          best_theta = theta;
          best_phi = phi;
          improved = true;
        }
      }
    }
    if (!improved) {
      step_t /= 2;
      step_p /= 2;
    }
  }
  return best;
}

}  // namespace stabwit
