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

#include <optional>
#include <unordered_set>

#include "stabwit/dense.hpp"
#include "stabwit/pauli.hpp"

namespace stabwit {

/// An ordered list of k candidate stabilizer generators on N qudits.
/// Construction performs only cheap structural checks; full group
/// validation happens in StabilizerGroup.
struct GeneratorSet {
  int d = 2;
  int n_sites = 0;
  std::vector<PauliWord> generators;
  std::vector<std::string> labels;

  GeneratorSet() = default;

  GeneratorSet(int d_, int n_sites_, std::vector<PauliWord> gens,
               std::vector<std::string> labels_ = {})
      : d(d_), n_sites(n_sites_), generators(std::move(gens)), labels(std::move(labels_)) {
    if (!is_prime(d)) throw std::invalid_argument("GeneratorSet: d must be prime");
    if (n_sites < 1) throw std::invalid_argument("GeneratorSet: need at least one site");
    if (static_cast<int>(generators.size()) > n_sites) {
      throw std::invalid_argument("GeneratorSet: more generators (" +
                                  std::to_string(generators.size()) + ") than sites (" +
                                  std::to_string(n_sites) + ")");
    }
    for (const auto& g : generators) {
      if (g.d != d || g.n_sites() != n_sites) {
        throw std::invalid_argument("GeneratorSet: generator on wrong space");
      }
    }
    if (!labels.empty() && labels.size() != generators.size()) {
      throw std::invalid_argument("GeneratorSet: label count mismatch");
    }
  }

  int num_generators() const { return static_cast<int>(generators.size()); }
};

/// Throws (with the offending pair) unless all generators mutually commute.
inline void validate_pairwise_commutation(const GeneratorSet& gens) {
  const int k = gens.num_generators();
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const int tau = commutation_exponent(gens.generators[i], gens.generators[j]);
      if (tau != 0) {
        throw std::invalid_argument("stabilizer: generators " + std::to_string(i + 1) +
                                    " and " + std::to_string(j + 1) +
                                    " do not commute (exponent " + std::to_string(tau) + ")");
      }
    }
  }
}

/// A validated stabilizer group with its full element enumeration cached.
///
/// Validation enumerates all d^k generator-power products and rejects any
/// nonzero power combination whose product has trivial X/Z exponents. That
/// single check enforces both generator independence and the absence of
/// nontrivial phases times identity in the group.
class StabilizerGroup {
 public:
  static constexpr long long kDefaultEnumCap = 1'000'000;

  explicit StabilizerGroup(GeneratorSet gens, long long enum_cap = kDefaultEnumCap)
      : gens_(std::move(gens)) {
    validate_pairwise_commutation(gens_);
    enumerate(enum_cap);
  }

  const GeneratorSet& generator_set() const { return gens_; }
  const std::vector<PauliWord>& generators() const { return gens_.generators; }
  const std::vector<PauliWord>& elements() const { return elements_; }
  int d() const { return gens_.d; }
  int n_sites() const { return gens_.n_sites; }
  int num_generators() const { return gens_.num_generators(); }

  /// dim of the stabilized subspace, d^{N-k}.
  long long subspace_dimension() const {
    return pow_ll(gens_.d, gens_.n_sites - gens_.num_generators());
  }

 private:
  void enumerate(long long enum_cap) {
    const int k = gens_.num_generators();
    const int d = gens_.d;
    const long long size = pow_ll(d, k);
    if (size > enum_cap) {
      throw std::invalid_argument("stabilizer: group size d^k = " + std::to_string(size) +
                                  " exceeds enumeration cap " + std::to_string(enum_cap));
    }
    elements_.reserve(size);
    // Cache all generator powers, then walk exponent vectors in odometer order.
    std::vector<std::vector<PauliWord>> pows(k);
    for (int i = 0; i < k; ++i) {
      pows[i].push_back(PauliWord::identity(d, gens_.n_sites));
      for (int e = 1; e < d; ++e) {
        pows[i].push_back(multiply(pows[i].back(), gens_.generators[i]));
      }
    }
    std::vector<int> e(k, 0);
    std::unordered_set<std::string> seen;
    for (long long count = 0; count < size; ++count) {
      PauliWord elem = PauliWord::identity(d, gens_.n_sites);
      for (int i = 0; i < k; ++i) {
        if (e[i] != 0) elem = multiply(elem, pows[i][e[i]]);
      }
      if (elem.is_phase_times_identity() && count != 0) {
        throw std::invalid_argument(
            "stabilizer: dependent generators; exponents " + exponents_text(e) +
            " give w^" + std::to_string(elem.phase) + " * identity");
      }
      std::string sig = signature(elem);
      if (!seen.insert(sig).second) {
        throw std::invalid_argument("stabilizer: duplicate element signature " + sig);
      }
      elements_.push_back(std::move(elem));
      for (int pos = 0; pos < k; ++pos) {  // advance, least significant first
        if (++e[pos] < d) break;
        e[pos] = 0;
      }
    }
  }

  static std::string exponents_text(const std::vector<int>& e) {
    std::string s = "(";
    for (size_t i = 0; i < e.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e[i]);
    }
    return s + ")";
  }

  static std::string signature(const PauliWord& w) {
    std::string s;
    s.reserve(2 * w.x.size() + 2);
    s += static_cast<char>('0' + w.phase);
    for (int v : w.x) s += static_cast<char>('0' + v);
    s += '|';
    for (int v : w.z) s += static_cast<char>('0' + v);
    return s;
  }

  GeneratorSet gens_;
  std::vector<PauliWord> elements_;
};

/// Projector onto the stabilized subspace: (1/d^k) sum over group elements.
/// Hermitian, idempotent, rank d^{N-k}.
inline DenseMatrix projector(const StabilizerGroup& group, long long cap = kDefaultDenseCap) {
  const long long dim = dense_dim(group.d(), group.n_sites(), cap);
  DenseMatrix p = DenseMatrix::Zero(dim, dim);
  const double scale = 1.0 / static_cast<double>(group.elements().size());
  for (const auto& elem : group.elements()) {
    accumulate_word(p, elem, Complex(scale, 0.0), cap);
  }
  return p;
}

/// The four stabilizer generators of the five-qubit code, as commonly listed.
inline GeneratorSet five_qubit_code_generators() {
  const int d = 2, n = 5;
  auto word = [&](const std::string& text) { return parse_pauli(text, d, n); };
  return GeneratorSet(d, n,
                      {word("X1 Z2 Z3 X4"), word("X2 Z3 Z4 X5"), word("X1 X3 Z4 Z5"),
                       word("Z1 X2 X4 Z5")},
                      {"G1", "G2", "G3", "G4"});
}

}  // namespace stabwit
