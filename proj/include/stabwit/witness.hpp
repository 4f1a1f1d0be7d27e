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
#include <limits>
#include <map>

#include "stabwit/graph.hpp"
#include "stabwit/lms.hpp"
#include "stabwit/stabilizer.hpp"

namespace stabwit {

enum class WitnessKind { Projector, GeneratorSum, Colored, Custom };

struct WeightedWord {
  Complex weight;
  PauliWord word;
};

/// A genuine-multipartite-entanglement witness W = c*I + <structure>, where
/// the structure is one of
///   Projector:     -P, the projector onto the stabilized subspace;
///   GeneratorSum:  an explicit real/complex-weighted sum of words;
///   Colored:       -d * sum_i prod_{j in C_i} (1/d) sum_n G_j^n over the
///                  color classes C_i of the generator conflict graph;
///   Custom:        an explicit weighted word sum from elsewhere.
/// All kinds render to Hermitian matrices.
struct Witness {
  WitnessKind kind = WitnessKind::Custom;
  double constant = 0.0;
  int d = 2;
  int n_sites = 0;
  int num_generators = 0;
  std::vector<PauliWord> generators;           // Projector / Colored
  std::vector<std::vector<int>> color_classes; // Colored
  std::vector<WeightedWord> terms;             // GeneratorSum / Custom

  int num_colors() const { return static_cast<int>(color_classes.size()); }

  std::vector<int> class_sizes() const {
    std::vector<int> sizes;
    for (const auto& c : color_classes) sizes.push_back(static_cast<int>(c.size()));
    return sizes;
  }
};

/// White-noise robustness of a witness against its target: the threshold
/// noise fraction p at which the expectation on p*I/d^N + (1-p)*rho crosses
/// zero. `detects` is false when the witness has nonnegative expectation on
/// the target or the threshold falls outside [0, 1].
struct RobustnessReport {
  double p_limit = std::numeric_limits<double>::quiet_NaN();
  double expectation = 0.0;       // on the target state/subspace
  double normalized_trace = 0.0;  // Tr(W) / d^N
  bool detects = false;
  std::string closed_form_used;   // closed-form tag when one applies
};

/// p = (-<W>) / (Tr(W)/d^N - <W>).
inline RobustnessReport threshold_probability(double expectation, double normalized_trace) {
  RobustnessReport r;
  r.expectation = expectation;
  r.normalized_trace = normalized_trace;
  if (expectation >= 0.0) return r;  // does not detect the target
  r.p_limit = -expectation / (normalized_trace - expectation);
  r.detects = r.p_limit >= 0.0 && r.p_limit <= 1.0;
  return r;
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

/// W = (1/d) I - P for the subspace stabilized by `gens`. Only pairwise
/// commutation is checked here; use the StabilizerGroup overload to also
/// enforce generator independence by enumeration.
inline Witness projector_witness(const GeneratorSet& gens) {
  validate_pairwise_commutation(gens);
  Witness w;
  w.kind = WitnessKind::Projector;
  w.d = gens.d;
  w.n_sites = gens.n_sites;
  w.num_generators = gens.num_generators();
  w.generators = gens.generators;
  w.constant = 1.0 / gens.d;
  return w;
}

inline Witness projector_witness(const StabilizerGroup& group) {
  return projector_witness(group.generator_set());
}

/// W = c I - (1/2) sum_k (G_k + G_k^dagger) with
/// c = N - (d-1)/d * (1 - cos(2 pi / d)), for a one-dimensional stabilizer
/// (k = N).
inline Witness generator_witness(const GeneratorSet& gens) {
  validate_pairwise_commutation(gens);
  if (gens.num_generators() != gens.n_sites) {
    throw std::invalid_argument("generator_witness: requires k = N generators, got k=" +
                                std::to_string(gens.num_generators()) + ", N=" +
                                std::to_string(gens.n_sites));
  }
  Witness w;
  w.kind = WitnessKind::GeneratorSum;
  w.d = gens.d;
  w.n_sites = gens.n_sites;
  w.num_generators = gens.num_generators();
  w.generators = gens.generators;
  const double d = gens.d;
  w.constant = gens.n_sites - (d - 1.0) / d * (1.0 - std::cos(2.0 * M_PI / d));
  for (const auto& g : gens.generators) {
    w.terms.push_back({Complex(-0.5, 0.0), g});
    w.terms.push_back({Complex(-0.5, 0.0), dagger(g)});
  }
  return w;
}

inline Witness generator_witness(const StabilizerGroup& group) {
  return generator_witness(group.generator_set());
}

/// W = [(K-1)d + 1] I - d sum_i prod_{j in C_i} (1/d) sum_n G_j^n for a
/// proper coloring {C_i} of the generator conflict graph. Works for
/// one-dimensional stabilizers (graph states) and for subspaces (k < N)
/// alike.
inline Witness colored_witness(const GeneratorSet& gens, const Coloring& coloring) {
  validate_pairwise_commutation(gens);
  const int k = gens.num_generators();
  if (static_cast<int>(coloring.color_of.size()) != k) {
    throw std::invalid_argument("colored_witness: coloring covers " +
                                std::to_string(coloring.color_of.size()) + " of " +
                                std::to_string(k) + " generators");
  }
  const CommutationProfile profile = commutation_profile(gens);
  if (!is_proper_coloring(profile.conflict, coloring.color_of)) {
    throw std::invalid_argument("colored_witness: improper coloring of the conflict graph");
  }
  Witness w;
  w.kind = WitnessKind::Colored;
  w.d = gens.d;
  w.n_sites = gens.n_sites;
  w.num_generators = k;
  w.generators = gens.generators;
  w.color_classes = coloring.classes;
  w.constant = (coloring.num_colors - 1) * static_cast<double>(gens.d) + 1.0;
  return w;
}

inline Witness colored_witness(const StabilizerGroup& group, const Coloring& coloring) {
  return colored_witness(group.generator_set(), coloring);
}

/// Colored witness with the optimal coloring computed from the conflict graph.
inline Witness colored_witness(const GeneratorSet& gens) {
  return colored_witness(gens, lms_count(gens).second);
}

// ---------------------------------------------------------------------------
// Symbolic trace and expectation
// ---------------------------------------------------------------------------

/// Tr(W) / d^N, computed from the term structure. Every nonidentity
/// Weyl-Heisenberg word is traceless, so only identity-proportional pieces
/// contribute.
inline double symbolic_normalized_trace(const Witness& w) {
  switch (w.kind) {
    case WitnessKind::Projector:
      return w.constant - std::pow(static_cast<double>(w.d), -w.num_generators);
    case WitnessKind::Colored: {
      double acc = 0.0;
      for (const auto& cls : w.color_classes) {
        acc += std::pow(static_cast<double>(w.d), -static_cast<double>(cls.size()));
      }
      return w.constant - w.d * acc;
    }
    case WitnessKind::GeneratorSum:
    case WitnessKind::Custom: {
      double tr = w.constant;
      for (const auto& t : w.terms) {
        if (!t.word.is_phase_times_identity()) continue;
        const Complex contribution = t.weight * omega_power(t.word.d, t.word.phase);
        if (std::abs(contribution.imag()) > 1e-12) {
          throw std::logic_error("symbolic_normalized_trace: non-real identity term");
        }
        tr += contribution.real();
      }
      return tr;
    }
  }
  throw std::logic_error("symbolic_normalized_trace: unknown kind");
}

/// <W> on any state supported in the stabilized subspace (equivalently on
/// the maximally mixed state of that subspace). Uses that every stabilizer
/// element has expectation exactly 1 there. Custom witnesses carry no
/// per-word stabilization structure (only sums of their terms stabilize),
/// so their expectation must be evaluated on an explicit target instead.
inline double symbolic_target_expectation(const Witness& w) {
  switch (w.kind) {
    case WitnessKind::Projector:
      return w.constant - 1.0;
    case WitnessKind::Colored:
      return w.constant - static_cast<double>(w.d) * w.num_colors();
    case WitnessKind::GeneratorSum: {
      double e = w.constant;
      for (const auto& t : w.terms) e += t.weight.real();
      return e;
    }
    case WitnessKind::Custom:
      throw std::invalid_argument(
          "symbolic_target_expectation: unavailable for custom witnesses; evaluate on an "
          "explicit target state");
  }
  throw std::logic_error("symbolic_target_expectation: unknown kind");
}

/// Robustness of `w` against white noise on its own target, via the
/// symbolic trace and expectation (no dense rendering).
inline RobustnessReport p_limit_generic(const Witness& w) {
  return threshold_probability(symbolic_target_expectation(w), symbolic_normalized_trace(w));
}

// ---------------------------------------------------------------------------
// Combinatorial spectrum
// ---------------------------------------------------------------------------

/// Full spectrum of a colored witness, optionally shifted by -alpha times
/// the projector witness of the same generators:  W - alpha * ((1/d)I - P).
/// Works in the joint generator eigenbasis: for a syndrome vector g in
/// Z_d^k the eigenvalue is
///     c - alpha/d + alpha*[g = 0] - d * #{classes with g_j = 0 for all j},
/// with multiplicity d^{N-k} per syndrome. Syndromes are aggregated by the
/// set of all-zero classes, so the cost is 2^K, not d^k.
/// Returns (eigenvalue, multiplicity) pairs sorted by eigenvalue.
inline std::vector<std::pair<double, long long>> witness_spectrum(const Witness& w,
                                                                  double alpha = 0.0) {
  if (w.kind != WitnessKind::Colored) {
    throw std::invalid_argument("witness_spectrum: supported for colored witnesses only");
  }
  const int num_classes = w.num_colors();
  if (num_classes > 30) {
    throw std::invalid_argument("witness_spectrum: too many color classes");
  }
  const long long base_mult = pow_ll(w.d, w.n_sites - w.num_generators);
  std::vector<std::pair<double, long long>> entries;
  for (uint32_t subset = 0; subset < (1u << num_classes); ++subset) {
    long long mult = base_mult;
    int zero_classes = 0;
    for (int i = 0; i < num_classes; ++i) {
      const long long class_dim = pow_ll(w.d, static_cast<int>(w.color_classes[i].size()));
      if (subset >> i & 1u) {
        ++zero_classes;  // all syndromes in the class are zero: one choice
      } else {
        mult *= class_dim - 1;
      }
    }
    if (mult == 0) continue;
    double lambda = w.constant - alpha / w.d - static_cast<double>(w.d) * zero_classes;
    if (zero_classes == num_classes) lambda += alpha;  // the g = 0 syndrome
    entries.emplace_back(lambda, mult);
  }
  std::sort(entries.begin(), entries.end());
  std::vector<std::pair<double, long long>> merged;
  for (const auto& e : entries) {
    if (!merged.empty() && std::abs(merged.back().first - e.first) < 1e-12) {
      merged.back().second += e.second;
    } else {
      merged.push_back(e);
    }
  }
  return merged;
}

// ---------------------------------------------------------------------------
// Closed-form thresholds
// ---------------------------------------------------------------------------

/// Projector witness onto a subspace with `num_generators` independent
/// generators: p = (d-1)/d * 1 / (1 - d^{-k}). Graph states have k = N.
inline double p_limit_projector(int d, int num_generators) {
  const double dd = d;
  return (dd - 1.0) / dd / (1.0 - std::pow(dd, -num_generators));
}

/// Qubit generator witness: p = 1/N. (For general d the generic route gives
/// (d-1)(1 - cos(2 pi/d)) / (d N); the closed form here is the d = 2 case.)
inline double p_limit_generator_qubit(int n) { return 1.0 / n; }

/// Colored witness with class sizes {|C_i|}:
/// p = (d-1)/d * 1 / (K - sum_i d^{-|C_i|}).
inline double p_limit_colored_general(int d, const std::vector<int>& class_sizes) {
  const double dd = d;
  double acc = 0.0;
  for (int size : class_sizes) acc += std::pow(dd, -size);
  return (dd - 1.0) / dd / (static_cast<double>(class_sizes.size()) - acc);
}

/// GHZ-tailored colored witness: p = (d-1) / (2d - 1 - d^{2-N}).
inline double p_limit_ghz(int d, int n) {
  const double dd = d;
  return (dd - 1.0) / (2.0 * dd - 1.0 - std::pow(dd, 2 - n));
}

/// Cluster-tailored colored witness; distinct closed forms for even/odd N.
inline double p_limit_cluster(int d, int n) {
  const double dd = d;
  if (n % 2 == 0) {
    return (dd - 1.0) / (2.0 * dd - 2.0 * std::pow(dd, -0.5 * n + 1.0));
  }
  return (dd - 1.0) /
         (2.0 * dd - std::pow(dd, -0.5 * n + 1.5) - std::pow(dd, -0.5 * n + 0.5));
}

/// Two-setting subspace witness: p = (d-1) / (2d - 1 - d^{1 - ceil((N-1)/(d-1))}).
inline double p_limit_gens_opt(int d, int n) {
  const int z_count = (n - 2) / (d - 1) + 1;
  const double dd = d;
  return (dd - 1.0) / (2.0 * dd - 1.0 - std::pow(dd, 1 - z_count));
}

/// N = d subspace witness: p = 1/2 for every prime d.
inline constexpr double p_limit_nd_subspace() { return 0.5; }

enum class WitnessFamily {
  Projector,
  GeneratorQubit,
  ColoredGeneral,
  Ghz,
  ClusterEven,
  ClusterOdd,
  GensOpt,
  NdSubspace,
};

inline const char* family_name(WitnessFamily f) {
  switch (f) {
    case WitnessFamily::Projector: return "projector";
    case WitnessFamily::GeneratorQubit: return "generator_qubit";
    case WitnessFamily::ColoredGeneral: return "colored_general";
    case WitnessFamily::Ghz: return "ghz";
    case WitnessFamily::ClusterEven: return "cluster_even";
    case WitnessFamily::ClusterOdd: return "cluster_odd";
    case WitnessFamily::GensOpt: return "gens_opt";
    case WitnessFamily::NdSubspace: return "nd_subspace";
  }
  return "?";
}

/// Closed-form threshold dispatcher. `class_sizes` is used by ColoredGeneral
/// and `num_generators` by Projector; other families need only (d, N).
inline double p_limit_closed_form(WitnessFamily family, int d, int n,
                                  const std::vector<int>& class_sizes = {},
                                  int num_generators = 0) {
  switch (family) {
    case WitnessFamily::Projector:
      return p_limit_projector(d, num_generators > 0 ? num_generators : n);
    case WitnessFamily::GeneratorQubit:
      if (d != 2) throw std::invalid_argument("p_limit_closed_form: generator form is d=2 only");
      return p_limit_generator_qubit(n);
    case WitnessFamily::ColoredGeneral:
      if (class_sizes.empty()) {
        throw std::invalid_argument("p_limit_closed_form: colored_general needs class sizes");
      }
      return p_limit_colored_general(d, class_sizes);
    case WitnessFamily::Ghz:
      return p_limit_ghz(d, n);
    case WitnessFamily::ClusterEven:
      if (n % 2 != 0) throw std::invalid_argument("p_limit_closed_form: N must be even");
      return p_limit_cluster(d, n);
    case WitnessFamily::ClusterOdd:
      if (n % 2 == 0) throw std::invalid_argument("p_limit_closed_form: N must be odd");
      return p_limit_cluster(d, n);
    case WitnessFamily::GensOpt:
      return p_limit_gens_opt(d, n);
    case WitnessFamily::NdSubspace:
      if (n != d) throw std::invalid_argument("p_limit_closed_form: nd_subspace needs N = d");
      return p_limit_nd_subspace();
  }
  throw std::invalid_argument("p_limit_closed_form: unknown family");
}

// ---------------------------------------------------------------------------
// Curve emission
// ---------------------------------------------------------------------------

struct CurveRow {
  std::string family;
  int d = 2;
  int n = 0;
  int num_settings = 2;  // K
  double p_limit = 0.0;
};

/// Threshold-vs-N rows for the named curve family ("ghz", "cluster",
/// "gens_opt"), suitable for CSV export and replotting.
inline std::vector<CurveRow> emit_curves(const std::string& family, int d, int n_lo,
                                         int n_hi) {
  if (!is_prime(d)) throw std::invalid_argument("emit_curves: d must be prime");
  if (n_lo < 2 || n_hi < n_lo) throw std::invalid_argument("emit_curves: bad N range");
  std::vector<CurveRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    CurveRow row;
    row.family = family;
    row.d = d;
    row.n = n;
    row.num_settings = 2;
    if (family == "ghz") {
      row.p_limit = p_limit_ghz(d, n);
    } else if (family == "cluster") {
      row.p_limit = p_limit_cluster(d, n);
    } else if (family == "gens_opt") {
      row.p_limit = p_limit_gens_opt(d, n);
    } else {
      throw std::invalid_argument("emit_curves: unknown family '" + family + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace stabwit
